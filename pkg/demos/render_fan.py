#!/usr/bin/env python3
"""Render a fan and its Demazure roots to an SVG file.

Usage: render_fan.py [example-name] [output.svg]
"""

import sys

from toric_additive import all_roots, build_fan, example_fan, fan_svg

name = sys.argv[1] if len(sys.argv) > 1 else "f1"
out = sys.argv[2] if len(sys.argv) > 2 else f"fan_{name.replace(':', '')}.svg"

fan = build_fan(example_fan(name))
svg = fan_svg(fan, all_roots(fan), title=name)
with open(out, "w") as fh:
    fh.write(svg)
print(f"wrote {out}: rays on the left, character lattice on the right")
print("filled red dots are semisimple roots, green circles positive ones")

#!/usr/bin/env python3
"""One-line classification summary for every named fan in the catalog."""

from toric_additive import (
    build_fan,
    classify,
    example_fan,
    example_names,
    verification_report,
)

header = f"{'name':<8} {'rays':<38} {'classes':>7} {'wide':>5} {'d':>3} {'checks':>7}"
print(header)
print("-" * len(header))

for name in example_names():
    if name == "f:a":
        name = "f:5"  # pick one member of the Hirzebruch family
    rays = example_fan(name)
    c = classify(build_fan(rays))
    rep = verification_report(c)
    ray_text = " ".join(f"({r[0]},{r[1]})" for r in rays)
    print(f"{name:<8} {ray_text:<38} {c.num_classes:>7} "
          f"{str(bool(c.wide)):>5} {str(c.d):>3} "
          f"{'ok' if rep['all_pass'] else 'FAIL':>7}")

print()
print("every row ran the full oracle battery (root box scan, bracket")
print("table, group law, homogeneity, open orbit, distinguisher)")

"""Ranks and genera for full and cyclic covers over a small grid.

Run: python3 demos/genus_grid.py
"""

from covhom import CoverSpec, Kind, crowell_ranks

print(f"{'s':>2} {'k':>2} {'kind':>6} {'|H|':>5} {'rank_Q':>7} {'rank_H1':>8} {'genus':>6} consistent")
for s in (3, 4, 5):
    for k in (2, 3, 4):
        for kind in Kind:
            spec = CoverSpec(s, k, kind)
            if spec.order > 1024:
                continue
            rep = crowell_ranks(spec)
            print(f"{s:>2} {k:>2} {kind.value:>6} {spec.order:>5} {rep.rank_Q:>7} "
                  f"{rep.rank_H1:>8} {str(rep.genus_rh):>6} {rep.consistent}")

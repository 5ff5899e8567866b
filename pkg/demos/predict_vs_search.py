"""Compare the closed-form size predictions against exhaustive search.

Run with:  python demos/predict_vs_search.py
"""

from ramstruct import build_group, predict_nilpotent, size_set_up_to

CAP = 7

for spec in ("C3xC3", "C2xC2xC2", "C4xC4xC2", "C6xC6xC2", "heis(3)"):
    G = build_group(spec)
    scs = predict_nilpotent(G)
    result = size_set_up_to(G, CAP)
    print(f"{spec} (order {G.order})")
    if scs.admits:
        print(f"  predicted: min size {scs.min_size}, excluded {sorted(scs.excluded_pairs)},"
              f" both-odd barred: {scs.forbid_both_odd}")
    else:
        print("  predicted: no structures at all")
    print(f"  searched:  {sorted(result.pairs) or 'none'}"
          f"  ({result.stats.candidates} candidates examined)")
    predicted = {
        (a, b) for a in range(3, CAP + 1) for b in range(a, CAP + 1) if scs.membership(a, b)
    }
    print(f"  agreement: {predicted == result.pairs}")
    print()

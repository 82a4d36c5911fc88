"""Compactness read off truncation tails.

Cutting a multiplier at index N leaves a remainder whose norm tracks
sup_{n > N} |a_n|.  For a decaying symbol the remainders vanish, so the
operator is a norm limit of finite-rank pieces; for the alternating symbol
they stay pinned at 1, and phase-normalized Walsh images stay uniformly
separated -- no convergent subsequence, no compactness.
"""

from walsh_lab import (
    AlternatingSymbol,
    GeometricSymbol,
    ReciprocalSymbol,
    Resolution,
    compactness_report,
    separation_distance,
)

res = Resolution(6)
cutoffs = [1, 3, 7, 15, 31]


def show(rep):
    print(f"symbol={rep.family}  regime L^{rep.p_in:g} -> L^{rep.p_out:g}  "
          f"verdict={rep.verdict} (corroborated={rep.corroborated})")
    print(f"  {'N':>4} {'tail norm':>14} {'analytic sup':>14}")
    for row in rep.rows:
        print(f"  {row.cutoff:>4} {row.estimate.value:14.9f} {row.analytic_sup:14.9f}")


show(compactness_report(ReciprocalSymbol(), 2.0, 2.0, res, cutoffs))
print()
show(compactness_report(ReciprocalSymbol(), 4.0, 2.0, res, cutoffs))
print()
show(compactness_report(GeometricSymbol(0.7), 2.0, 2.0, res, cutoffs))
print()
show(compactness_report(AlternatingSymbol(), 2.0, 2.0, res, cutoffs))

print("\nSeparation of images for the alternating symbol (expect 2^(1-1/p)):")
for p in (1.5, 2.0, 4.0):
    measured, formula = separation_distance(AlternatingSymbol(), 4, 9, p, res)
    print(f"  p={p:g}: measured {measured:.9f}  formula {formula:.9f}")

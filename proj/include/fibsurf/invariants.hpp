// Chern-invariant bookkeeping for double covers of the quadric surface.
#pragma once

#include "fibsurf/bipoly.hpp"
#include "fibsurf/rational.hpp"

#include <string>
#include <vector>

namespace fibsurf {

struct LedgerEntry {
    std::string source;
    long long dchi;
    long long dK2;
};

// (chi, K^2, c2) with c2 = 12 chi - K^2 maintained at every step.
struct SurfaceInvariants {
    long long chi = 0;
    long long K2 = 0;
    long long c2 = 0;
    std::vector<LedgerEntry> ledger;

    void apply(const LedgerEntry& e);
    void assert_noether() const;
};

// Both bidegree components even, i.e. the class is 2-divisible in Pic(P1xP1).
bool even_divisor_check(Bidegree d);

// Invariants of the double cover of P1xP1 branched over a smooth curve of the
// given even bidegree (the singular ones get ledger corrections afterwards).
SurfaceInvariants smooth_double_cover_invariants(Bidegree branch_degree);

// Canonical-resolution correction for one blow-up of branch multiplicity m:
// with k = floor(m/2), (dchi, dK2) = (-k(k-1)/2, -2(k-1)^2).
std::pair<long long, long long> step_invariant_delta(int m);

// Applies per-step deltas and +1 to K^2 per contracted (-1)-curve.
SurfaceInvariants resolved_invariants(SurfaceInvariants raw,
                                      const std::vector<std::pair<std::string, int>>& steps,
                                      int contractions);

// Genus of the double cover of a generic fibre of the first projection:
// r branch points give g = r/2 - 1. Vertical components are discarded first.
long long generic_fibre_genus(const BiPoly& branch_with_bidegree);

struct AmplenessFlag {
    bool ample;
    bool simply_connected_conclusion; // over a rational base with ample branch
};

AmplenessFlag ampleness_flag(Bidegree d);

} // namespace fibsurf

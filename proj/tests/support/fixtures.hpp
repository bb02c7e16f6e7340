#pragma once

#include "qk/enriched.hpp"

// Named structures the suites keep coming back to: the two-element quantale,
// a truncated-distance quantale, the idempotent-endomorphism base category,
// and a shelf of small posets. Categories built over a quantaloid share the
// pointer they were given; operations require pointer equality of bases.
namespace qk::fx {

// One object, hom {0 < 1}, tensor = meet, unit = 1.
QuantaloidPtr two_q();

// One object, hom {0,1,2,inf} ordered by reverse numeric size (top = 0),
// tensor = truncated addition, unit = 0. Joins are numeric minima.
QuantaloidPtr fin_metric_q();
extern const char* const fin_metric_names[4];

// One object "*", morphisms 1 and e with e.e = e.
FiniteCategory b_mono_category();
QuantaloidPtr q_b_mono();

// Bitmask with one bit per named morphism, positioned by hom_pos.
Val mor_mask(const FiniteCategory& b, std::initializer_list<const char*> names);

Poset chain_poset(int n);                    // 0 < 1 < ... < n-1
Poset antichain_poset(int n);                // a0, a1, ...
Poset diamond_poset();                       // bot < a,b < top
Poset v_poset();                             // a < c, b < c
Poset benzene_poset();                       // x0,x1,x2 < each of y0,y1,y2 except xi<yi
Poset m3_poset();                            // bot < a,b,c < top
Poset n5_poset();                            // bot < a < c < top, bot < b < top
Poset cube_poset();                          // subsets of a 3-set

FiniteLattice diamond_lattice();

// The poset as a category over two_q-style quantaloids: hom(x,y) = top iff
// x <= y, bottom otherwise. q must be one-object.
QCatPtr poset_qcat(QuantaloidPtr q, const Poset& p);

// Over fin_metric_q: hom(x,y) = dist[x][y] (indices into the carrier).
QCatPtr metric_qcat(QuantaloidPtr q, std::vector<std::string> names,
                    std::vector<std::vector<Val>> dist);

// The comma category of b_mono under its object, as a category over
// q_b_mono: objects 1 and e, hom(f,g) = {h | h.f = g}.
QCatPtr comma_bmono_qcat(QuantaloidPtr qb);

}  // namespace qk::fx

#pragma once

#include <functional>
#include <vector>

#include "asurf/ffield.hpp"

namespace asurf {

// Frobenius orbit of a nonzero element: a closed point of G_m of degree
// dividing the level a.
struct PlaceOrbit {
  Elem rep;   // minimal member under the coordinate-key order
  int size = 0;
};

// Orbit of (Z/3Z)^x x F_{q^a}^x under (j, alpha) -> (qj mod 3, alpha^q).
struct FullOrbit {
  int j = 1;           // first coordinate of the canonical representative
  Elem alpha;          // second coordinate of the canonical representative
  int size = 0;
  int pr1 = 0;         // +1 / -1 when q = 1 mod 3, else 0 (undefined)
  int place = -1;      // index into OrbitData::places of the image orbit
};

struct OrbitData {
  FieldParams params;
  int a = 0;
  int ord3q = 0;        // multiplicative order of q mod 3
  int tower_deg = 0;    // F_p-degree of the ambient field, e * lcm(ord3q, a)
  std::vector<PlaceOrbit> places;
  std::vector<FullOrbit> orbits;
  std::vector<std::size_t> maximal_places;  // indices, degree exactly a
  std::vector<std::size_t> maximal_orbits;  // indices, maximal orbit size
  int max_orbit_size = 0;
};

// F_p-degree of the single field every extension of one run lives in.
int run_tower_degree(const FieldParams& params, int a);

// Enumerates both orbit families inside the given tower. The tower must
// contain F_{q^{lcm(ord3q, a)}}.
OrbitData enumerate_orbits(const FieldTower& F, const FieldParams& params, int a);

// Streaming variant for sweeps: yields each full orbit once, in the same
// canonical order as enumerate_orbits, without materializing the list.
void stream_orbits(const FieldTower& F, const FieldParams& params, int a,
                   const std::function<void(const FullOrbit&)>& yield);

std::vector<Elem> place_members(const FieldTower& F, const FieldParams& params, const PlaceOrbit& v);
std::vector<std::pair<int, Elem>> orbit_members(const FieldTower& F, const FieldParams& params,
                                                const FullOrbit& o);

// Number of closed points of G_m over F_q of degree exactly d
// (Moebius-inverted count of elements of degree d, divided by d).
BigInt count_places_of_degree(const BigInt& q, int d);

// Size every maximal orbit must have for this (q, a).
int maximal_orbit_size(const FieldParams& params, int a);

}  // namespace asurf

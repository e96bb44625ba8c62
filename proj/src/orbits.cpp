#include "asurf/orbits.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace asurf {

namespace {

int mobius(int n) {
  int mu = 1;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      n /= d;
      if (n % d == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

}  // namespace

int run_tower_degree(const FieldParams& params, int a) {
  check(params.q % 3 != 0, "q divisible by 3 is out of scope");
  int ord3q = (params.q % 3 == 1) ? 1 : 2;
  return params.e * std::lcm(ord3q, a);
}

BigInt count_places_of_degree(const BigInt& q, int d) {
  check(d >= 1, "degree must be positive");
  BigInt elems = 0;
  for (int t = 1; t <= d; ++t) {
    if (d % t != 0) continue;
    int mu = mobius(t);
    if (mu == 0) continue;
    elems += mu * (pow_bigint(q, static_cast<std::uint64_t>(d / t)) - 1);
  }
  check(elems % d == 0, "place count not divisible by degree");
  return elems / d;
}

int maximal_orbit_size(const FieldParams& params, int a) {
  bool q1mod3 = (params.q % 3 == 1);
  if (q1mod3 || a % 2 == 0) return a;
  return 2 * a;
}

OrbitData enumerate_orbits(const FieldTower& F, const FieldParams& params, int a) {
  OrbitData out;
  out.params = params;
  out.a = a;
  out.ord3q = (params.q % 3 == 1) ? 1 : 2;
  out.tower_deg = F.deg();
  const int ea = params.e * a;
  check(F.deg() % (params.e * std::lcm(out.ord3q, a)) == 0, "tower too small for this level");

  auto field_elems = F.subfield_elements(ea);  // F_{q^a}, sorted by key
  const std::size_t qa = field_elems.size();
  std::unordered_map<std::uint64_t, std::size_t> index_of;
  index_of.reserve(qa);
  for (std::size_t i = 0; i < qa; ++i) index_of[F.key(field_elems[i])] = i;

  // Places: orbits of F_{q^a}^x under alpha -> alpha^q. Scanning keys in
  // increasing order makes the first-seen member the canonical representative.
  std::vector<int> place_idx(qa, -1);
  for (std::size_t i = 0; i < qa; ++i) {
    if (F.is_zero(field_elems[i]) || place_idx[i] >= 0) continue;
    PlaceOrbit v;
    v.rep = field_elems[i];
    Elem x = field_elems[i];
    int id = static_cast<int>(out.places.size());
    do {
      place_idx[index_of.at(F.key(x))] = id;
      v.size++;
      x = F.frob_pk(x, params.e);
    } while (!F.eq(x, v.rep));
    check(a % v.size == 0, "place size must divide the level");
    out.places.push_back(v);
  }

  // Full orbits on (Z/3Z)^x x F_{q^a}^x under (j, alpha) -> (qj, alpha^q).
  const int qmod3 = static_cast<int>(params.q % 3);
  std::vector<std::array<bool, 2>> seen(qa, std::array<bool, 2>{false, false});
  for (std::size_t i = 0; i < qa; ++i) {
    if (F.is_zero(field_elems[i])) continue;
    for (int j0 = 1; j0 <= 2; ++j0) {
      if (seen[i][static_cast<std::size_t>(j0 - 1)]) continue;
      FullOrbit o;
      o.j = j0;
      o.alpha = field_elems[i];
      int j = j0;
      Elem x = field_elems[i];
      do {
        seen[index_of.at(F.key(x))][static_cast<std::size_t>(j - 1)] = true;
        o.size++;
        j = (j * qmod3) % 3;
        x = F.frob_pk(x, params.e);
      } while (!(j == j0 && F.eq(x, o.alpha)));
      o.pr1 = (qmod3 == 1) ? (j0 == 1 ? +1 : -1) : 0;
      o.place = place_idx[i];
      check(o.size == std::lcm(out.ord3q, out.places[static_cast<std::size_t>(o.place)].size),
            "orbit size violates the lcm identity");
      out.orbits.push_back(o);
    }
  }

  // Exact partitions of both acting sets.
  std::int64_t place_mass = 0, orbit_mass = 0;
  for (const auto& v : out.places) place_mass += v.size;
  for (const auto& o : out.orbits) orbit_mass += o.size;
  check(place_mass == static_cast<std::int64_t>(qa) - 1, "places do not partition F_{q^a}^x");
  check(orbit_mass == 2 * (static_cast<std::int64_t>(qa) - 1), "orbits do not partition the index set");

  out.max_orbit_size = maximal_orbit_size(params, a);
  for (std::size_t i = 0; i < out.places.size(); ++i)
    if (out.places[i].size == a) out.maximal_places.push_back(i);
  int observed_max = 0;
  for (const auto& o : out.orbits) observed_max = std::max(observed_max, o.size);
  check(observed_max == out.max_orbit_size, "maximal orbit size mismatch");
  for (std::size_t i = 0; i < out.orbits.size(); ++i)
    if (out.orbits[i].size == out.max_orbit_size) out.maximal_orbits.push_back(i);
  return out;
}

void stream_orbits(const FieldTower& F, const FieldParams& params, int a,
                   const std::function<void(const FullOrbit&)>& yield) {
  const int ea = params.e * a;
  const int ord3q = (params.q % 3 == 1) ? 1 : 2;
  const int qmod3 = static_cast<int>(params.q % 3);
  auto field_elems = F.subfield_elements(ea);
  std::unordered_map<std::uint64_t, std::size_t> index_of;
  index_of.reserve(field_elems.size());
  for (std::size_t i = 0; i < field_elems.size(); ++i) index_of[F.key(field_elems[i])] = i;
  std::vector<std::array<bool, 2>> seen(field_elems.size(), std::array<bool, 2>{false, false});
  for (std::size_t i = 0; i < field_elems.size(); ++i) {
    if (F.is_zero(field_elems[i])) continue;
    for (int j0 = 1; j0 <= 2; ++j0) {
      if (seen[i][static_cast<std::size_t>(j0 - 1)]) continue;
      FullOrbit o;
      o.j = j0;
      o.alpha = field_elems[i];
      o.pr1 = (qmod3 == 1) ? (j0 == 1 ? +1 : -1) : 0;
      int j = j0;
      Elem x = field_elems[i];
      do {
        seen[index_of.at(F.key(x))][static_cast<std::size_t>(j - 1)] = true;
        o.size++;
        j = (j * qmod3) % 3;
        x = F.frob_pk(x, params.e);
      } while (!(j == j0 && F.eq(x, o.alpha)));
      check(o.size % ord3q == 0 || ord3q == 1, "orbit size incompatible with the zigzag");
      yield(o);
    }
  }
}

std::vector<Elem> place_members(const FieldTower& F, const FieldParams& params, const PlaceOrbit& v) {
  std::vector<Elem> out;
  Elem x = v.rep;
  do {
    out.push_back(x);
    x = F.frob_pk(x, params.e);
  } while (!F.eq(x, v.rep));
  return out;
}

std::vector<std::pair<int, Elem>> orbit_members(const FieldTower& F, const FieldParams& params,
                                                const FullOrbit& o) {
  std::vector<std::pair<int, Elem>> out;
  const int qmod3 = static_cast<int>(params.q % 3);
  int j = o.j;
  Elem x = o.alpha;
  do {
    out.emplace_back(j, x);
    j = (j * qmod3) % 3;
    x = F.frob_pk(x, params.e);
  } while (!(j == o.j && F.eq(x, o.alpha)));
  return out;
}

}  // namespace asurf

#pragma once

// Random instance generators and small brute-force oracles shared by the tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hblab/exact.hpp"
#include "hblab/seminorm.hpp"

namespace hbtest {

using hblab::Scalar;
using hblab::Vec;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline long uniform_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Scalar small_rational(long range = 5, long max_den = 3) {
  Scalar q(uniform_int(-range, range), static_cast<unsigned long>(uniform_int(1, max_den)));
  q.canonicalize();
  return q;
}

inline Vec random_vec(std::size_t n, long range = 5, long max_den = 3) {
  Vec v(n);
  for (auto& x : v) x = small_rational(range, max_den);
  return v;
}

inline Vec random_nonzero_vec(std::size_t n, long range = 5, long max_den = 3) {
  for (;;) {
    Vec v = random_vec(n, range, max_den);
    if (!hblab::is_zero(v)) return v;
  }
}

// Subspace of the requested dimension spanned by random vectors.
inline hblab::Subspace random_subspace(std::size_t n, std::size_t d) {
  for (;;) {
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < d; ++i) vs.push_back(random_vec(n, 3, 2));
    auto s = hblab::Subspace::span(n, vs);
    if (s.dim() == d) return s;
  }
}

// One or two atoms of up to three small integer generators each.
inline hblab::PolyhedralSeminorm random_seminorm(std::size_t n, const std::string& label = "r") {
  std::vector<hblab::Atom> atoms;
  const long count = uniform_int(1, 2);
  for (long a = 0; a < count; ++a) {
    hblab::Atom atom;
    atom.combine = uniform_int(0, 1) ? hblab::Combine::Max : hblab::Combine::Sum;
    const long gens = uniform_int(1, 3);
    for (long g = 0; g < gens; ++g) atom.generators.push_back(random_nonzero_vec(n, 2, 1));
    atoms.push_back(std::move(atom));
  }
  return hblab::PolyhedralSeminorm(label, std::move(atoms));
}

}  // namespace hbtest

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slmod/exact_linalg.hpp"
#include "slmod/graded_modules.hpp"
#include "slmod/report_types.hpp"
#include "slmod/sl_maps.hpp"

namespace slmod {

// DeRham: the pi maps; TChain: the T maps; FSq: f_p on Lambda^p; FSqFund: f_p
// on the fundamental subspace. The first two are taken over all positions
// 0..N with zero maps past either end.
enum class ComplexId { DeRham, TChain, FSq, FSqFund };

inline std::string to_string(ComplexId c) {
  switch (c) {
    case ComplexId::DeRham: return "DERHAM";
    case ComplexId::TChain: return "TCHAIN";
    case ComplexId::FSq: return "FSQ";
    case ComplexId::FSqFund: return "FSQ_FUND";
  }
  return "?";
}

inline ComplexId parse_complex(const std::string& s) {
  if (s == "DERHAM") return ComplexId::DeRham;
  if (s == "TCHAIN") return ComplexId::TChain;
  if (s == "FSQ") return ComplexId::FSq;
  if (s == "FSQ_FUND") return ComplexId::FSqFund;
  throw std::invalid_argument("unknown complex: " + s);
}

inline void check_position(ComplexId c, int N, int p) {
  if (c == ComplexId::DeRham || c == ComplexId::TChain) {
    if (p < 0 || p > N) throw std::invalid_argument("complex position out of range");
  } else {
    if (N % 2 != 0) throw std::invalid_argument("f complexes need even N");
    if (p < 1 || p > N / 2) throw std::invalid_argument("f complexes need 1 <= p <= n");
  }
}

// Homology dimension at position p in the fiber of degree k.
inline std::size_t fiber_homology(ComplexId c, int N, int p, const Degree& k, const Vector& beta) {
  const Vector x = shifted(k, beta);
  switch (c) {
    case ComplexId::DeRham: {
      std::size_t ker = p == N ? binom(N, p) : kernel(wedge_matrix(x, p)).dim();
      std::size_t im = p == 0 ? 0 : rank(wedge_matrix(x, p - 1));
      return ker - im;
    }
    case ComplexId::TChain: {
      std::size_t ker = p == 0 ? 1 : kernel(contraction_matrix(x, p)).dim();
      std::size_t im = p == N ? 0 : rank(contraction_matrix(x, p + 1));
      return ker - im;
    }
    case ComplexId::FSq: {
      Matrix f = gl_matrix(rank_one_sym(x), p);
      if (!(f * f).is_zero()) throw std::logic_error("f_p does not square to zero");
      return kernel(f).dim() - rank(f);
    }
    case ComplexId::FSqFund: {
      Matrix f = gl_matrix(rank_one_sym(x), p);
      const Subspace& V = fundamental_subspace(N, p);
      return kernel_on(f, V).dim() - image(f, V).dim();
    }
  }
  return 0;
}

inline std::vector<std::pair<Degree, std::size_t>> complex_homology(ComplexId c, int N, int p, const Vector& beta,
                                                                    const Window& window) {
  check_position(c, N, p);
  if (beta.size() != static_cast<std::size_t>(N)) throw std::invalid_argument("beta must have length N");
  std::vector<std::pair<Degree, std::size_t>> out;
  for (std::size_t i = 0; i < window.size(); ++i) {
    Degree k = window.degree(i);
    out.emplace_back(k, fiber_homology(c, N, p, k, beta));
  }
  return out;
}

// Expected homology from the family descriptions. At k = -beta every map
// vanishes and the whole fiber survives.
inline std::size_t predicted_homology(ComplexId c, int N, int p, const Degree& k, const Vector& beta) {
  const Vector x = shifted(k, beta);
  if (x.is_zero()) return c == ComplexId::FSqFund ? fundamental_subspace(N, p).dim() : binom(N, p);
  const FamilySpec min{FamilyKind::Min, false, SpecialPolicy::Omit};
  switch (c) {
    case ComplexId::DeRham:
    case ComplexId::TChain: return 0;
    case ComplexId::FSq: {
      std::size_t up = family_fiber(min, N, p + 1, k, beta).dim();
      std::size_t down = family_fiber(min, N, p - 1, k, beta).dim();
      return up + down;
    }
    case ComplexId::FSqFund: {
      const int n = N / 2;
      if (p == n) {
        if (p == 1) return 0;
        return family_fiber({FamilyKind::Min, true, SpecialPolicy::Omit}, N, p - 1, k, beta).dim();
      }
      Subspace mx = family_fiber({FamilyKind::Max, true, SpecialPolicy::Omit}, N, p, k, beta);
      return image(wedge_matrix(x, p), mx).dim();
    }
  }
  return 0;
}

inline Report compare_with_prediction(ComplexId c, int N, int p, const Vector& beta, const Window& window) {
  check_position(c, N, p);
  Report rep;
  auto special = special_degree(beta);
  for (const auto& [k, h] : complex_homology(c, N, p, beta, window)) {
    std::string label = to_string(c) + " H_" + std::to_string(p);
    if (special && k == *special) label += " (special fiber k = -beta)";
    rep.expect(k, label, dim_value(predicted_homology(c, N, p, k, beta)), dim_value(h));
  }
  return rep;
}

}  // namespace slmod

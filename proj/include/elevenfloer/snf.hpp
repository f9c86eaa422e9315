#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <vector>

#include "elevenfloer/matrix.hpp"

namespace elevenfloer {

/// Smith normal form U * A * V = D with U, V unimodular and the diagonal of D
/// a nonnegative divisibility chain d1 | d2 | ... followed by zeros.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::size_t rank() const {
    std::size_t r = 0;
    while (r < std::min(D.rows(), D.cols()) && D(r, r) != 0) ++r;
    return r;
  }

  std::vector<Int> diagonal() const {
    std::vector<Int> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
    return out;
  }

  /// Nonunit invariant factors, i.e. the torsion of the cokernel.
  std::vector<Int> torsion() const {
    std::vector<Int> out;
    for (std::size_t i = 0; i < rank(); ++i)
      if (D(i, i) > 1) out.push_back(D(i, i));
    return out;
  }
};

namespace detail {

struct Pivot {
  std::size_t row;
  std::size_t col;
};

// Smallest nonzero |entry| in the trailing block starting at (t, t); ties broken row-major.
inline std::optional<Pivot> smallest_entry(const IntMatrix& d, std::size_t t) {
  std::optional<Pivot> best;
  Int best_abs = 0;
  for (std::size_t r = t; r < d.rows(); ++r)
    for (std::size_t c = t; c < d.cols(); ++c) {
      Int a = std::llabs(d(r, c));
      if (a != 0 && (!best || a < best_abs)) {
        best = Pivot{r, c};
        best_abs = a;
      }
    }
  return best;
}

// Smallest nonzero |entry| restricted to row t and column t of the trailing block.
inline std::optional<Pivot> smallest_in_cross(const IntMatrix& d, std::size_t t) {
  std::optional<Pivot> best;
  Int best_abs = 0;
  auto consider = [&](std::size_t r, std::size_t c) {
    Int a = std::llabs(d(r, c));
    if (a != 0 && (!best || a < best_abs)) {
      best = Pivot{r, c};
      best_abs = a;
    }
  };
  for (std::size_t c = t; c < d.cols(); ++c) consider(t, c);
  for (std::size_t r = t + 1; r < d.rows(); ++r) consider(r, t);
  return best;
}

}  // namespace detail

/// Deterministic Smith normal form. Pivot choice: smallest nonzero absolute
/// value in the remaining block, first in row-major order.
inline SmithForm smith_normal_form(const IntMatrix& a) {
  SmithForm s{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
  IntMatrix& d = s.D;
  const std::size_t limit = std::min(d.rows(), d.cols());

  for (std::size_t t = 0; t < limit; ++t) {
    auto start = detail::smallest_entry(d, t);
    if (!start) break;

    auto bring_to_diagonal = [&](detail::Pivot p) {
      d.swap_rows(t, p.row);
      s.U.swap_rows(t, p.row);
      d.swap_cols(t, p.col);
      s.V.swap_cols(t, p.col);
    };
    bring_to_diagonal(*start);

    for (;;) {
      bool clean = true;
      for (std::size_t r = t + 1; r < d.rows(); ++r) {
        if (d(r, t) == 0) continue;
        Int q = d(r, t) / d(t, t);
        d.add_row(r, t, -q);
        s.U.add_row(r, t, -q);
        if (d(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < d.cols(); ++c) {
        if (d(t, c) == 0) continue;
        Int q = d(t, c) / d(t, t);
        d.add_col(c, t, -q);
        s.V.add_col(c, t, -q);
        if (d(t, c) != 0) clean = false;
      }
      if (!clean) {
        bring_to_diagonal(*detail::smallest_in_cross(d, t));
        continue;
      }
      // Row and column are clear; enforce divisibility of the remaining block.
      std::optional<std::size_t> offending;
      for (std::size_t r = t + 1; r < d.rows() && !offending; ++r)
        for (std::size_t c = t + 1; c < d.cols(); ++c)
          if (d(r, c) % d(t, t) != 0) {
            offending = r;
            break;
          }
      if (!offending) break;
      d.add_row(t, *offending, 1);
      s.U.add_row(t, *offending, 1);
    }

    if (d(t, t) < 0) {
      d.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return s;
}

/// Rank of an integer matrix (over Q, equivalently over Z).
inline std::size_t integer_rank(const IntMatrix& a) { return smith_normal_form(a).rank(); }

/// Columns form a basis of the integer kernel {v : A v = 0}; the basis is saturated.
inline IntMatrix kernel_basis(const IntMatrix& a) {
  SmithForm s = smith_normal_form(a);
  const std::size_t r = s.rank();
  IntMatrix out(a.cols(), a.cols() - r);
  for (std::size_t j = r; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) out(i, j - r) = s.V(i, j);
  return out;
}

/// Solves A c = v over the integers, if possible.
inline std::optional<std::vector<Int>> solve_integer(const IntMatrix& a, std::span<const Int> v) {
  SmithForm s = smith_normal_form(a);
  std::vector<Int> uv = s.U * v;
  const std::size_t r = s.rank();
  std::vector<Int> y(a.cols(), 0);
  for (std::size_t i = 0; i < uv.size(); ++i) {
    if (i < r) {
      if (uv[i] % s.D(i, i) != 0) return std::nullopt;
      y[i] = uv[i] / s.D(i, i);
    } else if (uv[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * std::span<const Int>(y);
}

}  // namespace elevenfloer

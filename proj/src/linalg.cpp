#include "hncomb/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace hncomb {

Rat parse_rat(const std::string& s) {
  auto bad = [&] { throw std::invalid_argument("malformed rational: '" + s + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  try {
    size_t used = 0;
    long long num = std::stoll(s.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? s.size() : slash)) bad();
    long long den = 1;
    if (slash != std::string::npos) {
      den = std::stoll(s.substr(slash + 1), &used);
      if (used != s.size() - slash - 1) bad();
    }
    if (den == 0) bad();
    return Rat(num, den);
  } catch (const std::invalid_argument&) {
    bad();
  } catch (const std::out_of_range&) {
    bad();
  }
  return Rat(0);
}

std::string format_rat(const Rat& q) {
  std::string s = std::to_string(q.numerator());
  if (q.denominator() != 1) s += "/" + std::to_string(q.denominator());
  return s;
}

IMat imat_identity(int n) {
  IMat m(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

bool imat_is_identity(const IMat& m) {
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m.size(); ++j)
      if (m[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

IVec imat_apply(const IMat& m, const IVec& v) {
  IVec out(m.empty() ? 0 : m[0].size(), 0);
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t k = 0; k < out.size(); ++k) out[k] += v[i] * m[i][k];
  return out;
}

Vec imat_apply(const IMat& m, const Vec& v) {
  Vec out(m.empty() ? 0 : m[0].size(), Rat(0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t k = 0; k < out.size(); ++k) out[k] += v[i] * Rat(m[i][k]);
  return out;
}

IMat imat_mul(const IMat& a, const IMat& b) {
  IMat out(b.size());
  for (size_t j = 0; j < b.size(); ++j) out[j] = imat_apply(a, b[j]);
  return out;
}

IMat imat_inverse(const IMat& m) {
  int n = static_cast<int>(m.size());
  QMat cols(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cols[i][j] = Rat(m[i][j]);
  IMat inv(n, IVec(n));
  for (int j = 0; j < n; ++j) {
    Vec e(n, Rat(0)), x;
    e[j] = 1;
    if (!solve_linear(cols, e, x)) throw std::runtime_error("imat_inverse: singular matrix");
    for (int i = 0; i < n; ++i) {
      if (!rat_is_int(x[i])) throw std::runtime_error("imat_inverse: non-integral inverse");
      inv[j][i] = x[i].numerator();  // x is column j of the inverse
    }
  }
  return inv;
}

Vec vec_add(const Vec& a, const Vec& b) {
  Vec out(a);
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec out(a);
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

Vec vec_scale(const Vec& a, const Rat& c) {
  Vec out(a);
  for (auto& x : out) x *= c;
  return out;
}

bool vec_is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == 0; });
}

IVec ivec_add(const IVec& a, const IVec& b) {
  IVec out(a);
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

IVec ivec_sub(const IVec& a, const IVec& b) {
  IVec out(a);
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

IVec ivec_neg(const IVec& a) {
  IVec out(a);
  for (auto& x : out) x = -x;
  return out;
}

bool solve_linear(const QMat& cols, const Vec& rhs, Vec& out) {
  int ncols = static_cast<int>(cols.size());
  int nrows = static_cast<int>(rhs.size());
  // augmented row-echelon reduction
  std::vector<Vec> rows(nrows, Vec(ncols + 1, Rat(0)));
  for (int r = 0; r < nrows; ++r) {
    for (int c = 0; c < ncols; ++c) rows[r][c] = cols[c][r];
    rows[r][ncols] = rhs[r];
  }
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < ncols && rank < nrows; ++c) {
    int sel = -1;
    for (int r = rank; r < nrows; ++r)
      if (rows[r][c] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[rank], rows[sel]);
    Rat inv = Rat(1) / rows[rank][c];
    for (auto& x : rows[rank]) x *= inv;
    for (int r = 0; r < nrows; ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      Rat f = rows[r][c];
      for (int k = c; k <= ncols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (int r = rank; r < nrows; ++r)
    if (rows[r][ncols] != 0) return false;
  out.assign(ncols, Rat(0));
  for (int r = 0; r < rank; ++r) out[pivot_col[r]] = rows[r][ncols];
  return true;
}

namespace {

// Substitutes the affine equalities away, then eliminates the free variables
// one at a time. Rows are (coeffs..., const) with meaning >= 0.
bool fm_feasible(int n, std::vector<Vec> ineqs, Vec* witness) {
  if (n == 0) {
    for (auto& row : ineqs)
      if (row[0] < 0) return false;
    if (witness) witness->clear();
    return true;
  }
  // split on the last variable
  std::vector<Vec> lower, upper, rest;  // x >= l, x <= u
  for (auto& row : ineqs) {
    Rat c = row[n - 1];
    Vec r(row.begin(), row.end());
    r.erase(r.begin() + (n - 1));
    if (c == 0) {
      rest.push_back(r);
    } else {
      // c*x + f(y) >= 0  =>  x >= -f/c (c>0) or x <= -f/c (c<0)
      for (auto& x : r) x /= -c;
      if (c > 0)
        lower.push_back(r);  // x >= r(y)
      else
        upper.push_back(r);  // x <= r(y)
    }
  }
  std::vector<Vec> next = rest;
  for (auto& lo : lower)
    for (auto& up : upper) {
      Vec row(n, Rat(0));
      for (int i = 0; i < n; ++i) row[i] = up[i] - lo[i];  // u(y) - l(y) >= 0
      next.push_back(row);
    }
  if (!fm_feasible(n - 1, next, witness)) return false;
  if (witness) {
    Vec& y = *witness;
    auto eval = [&](const Vec& r) {
      Rat v = r[n - 1];
      for (int i = 0; i + 1 < n; ++i) v += r[i] * y[i];
      return v;
    };
    bool has_lo = !lower.empty(), has_up = !upper.empty();
    Rat lo_v(0), up_v(0);
    for (size_t i = 0; i < lower.size(); ++i) {
      Rat v = eval(lower[i]);
      if (i == 0 || v > lo_v) lo_v = v;
    }
    for (size_t i = 0; i < upper.size(); ++i) {
      Rat v = eval(upper[i]);
      if (i == 0 || v < up_v) up_v = v;
    }
    Rat x(0);
    if (has_lo && has_up)
      x = (lo_v + up_v) / 2;
    else if (has_lo)
      x = lo_v;
    else if (has_up)
      x = up_v;
    y.push_back(x);
  }
  return true;
}

}  // namespace

bool polyhedron_feasible(int n, const std::vector<Vec>& eqs, const std::vector<Vec>& ineqs,
                         Vec* witness) {
  // Gaussian elimination on the equalities: express pivot variables in terms
  // of the free ones, substitute into the inequalities.
  std::vector<Vec> rows = eqs;
  std::vector<int> pivot_of_row;
  int rank = 0;
  for (int c = 0; c < n && rank < static_cast<int>(rows.size()); ++c) {
    int sel = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][c] != 0) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    std::swap(rows[rank], rows[sel]);
    Rat inv = Rat(1) / rows[rank][c];
    for (auto& x : rows[rank]) x *= inv;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      Rat f = rows[r][c];
      for (int k = 0; k <= n; ++k) rows[r][k] -= f * rows[rank][k];
    }
    pivot_of_row.push_back(c);
    ++rank;
  }
  for (int r = rank; r < static_cast<int>(rows.size()); ++r)
    if (rows[r][n] != 0) return false;
  rows.resize(rank);

  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_of_row) is_pivot[c] = true;
  std::vector<int> free_vars;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free_vars.push_back(c);
  int nf = static_cast<int>(free_vars.size());

  // rows mean: x_pivot + sum_{free f} rows[r][f] * x_f + rows[r][n] = 0
  auto substituted = [&](const Vec& row) {
    Vec out(nf + 1, Rat(0));
    out[nf] = row[n];
    Vec coef(row.begin(), row.begin() + n);
    for (int r = 0; r < rank; ++r) {
      int pc = pivot_of_row[r];
      if (coef[pc] == 0) continue;
      Rat f = coef[pc];
      out[nf] -= f * rows[r][n];
      for (int i = 0; i < nf; ++i) out[i] -= f * rows[r][free_vars[i]];
      coef[pc] = 0;
    }
    for (int i = 0; i < nf; ++i) out[i] += coef[free_vars[i]];
    return out;
  };

  std::vector<Vec> sub_ineqs;
  sub_ineqs.reserve(ineqs.size());
  for (auto& row : ineqs) sub_ineqs.push_back(substituted(row));

  Vec free_witness;
  if (!fm_feasible(nf, sub_ineqs, witness ? &free_witness : nullptr)) return false;
  if (witness) {
    Vec x(n, Rat(0));
    for (int i = 0; i < nf; ++i) x[free_vars[i]] = free_witness[i];
    for (int r = 0; r < rank; ++r) {
      Rat v = -rows[r][n];
      for (int i = 0; i < nf; ++i) v -= rows[r][free_vars[i]] * free_witness[i];
      x[pivot_of_row[r]] = v;
    }
    *witness = x;
  }
  return true;
}

}  // namespace hncomb

#include "cloneq/tensor.hpp"

#include <algorithm>
#include <string>

namespace cloneq {

namespace {

// str[k] = d^(n-1-k), the stride of site k in the flat index.
std::vector<std::int64_t> strides(int d, int n) {
  std::vector<std::int64_t> str(n);
  std::int64_t s = 1;
  for (int k = n - 1; k >= 0; --k) {
    str[k] = s;
    s *= d;
  }
  return str;
}

void check_site(int site, int n) {
  if (site < 0 || site >= n)
    throw std::invalid_argument("site index " + std::to_string(site) +
                                " out of range for " + std::to_string(n) + " sites");
}

}  // namespace

std::int64_t tensor_side(int local_dim, int sites, std::int64_t guard) {
  if (local_dim < 2) throw std::invalid_argument("local dimension must be at least 2");
  if (sites < 0) throw std::invalid_argument("site count must be nonnegative");
  std::int64_t side = 1;
  for (int i = 0; i < sites; ++i) {
    if (side > guard / local_dim)
      throw dimension_error("tensor space d^n exceeds the dense-size guard of " +
                            std::to_string(guard));
    side *= local_dim;
  }
  return side;
}

TensorOperator::TensorOperator(int local_dim, int sites, Matrix entries,
                               std::int64_t guard)
    : d_(local_dim), n_(sites), mat_(std::move(entries)) {
  const std::int64_t side = tensor_side(local_dim, sites, guard);
  if (mat_.rows() != side || mat_.cols() != side)
    throw std::invalid_argument("operator entries must be d^n x d^n");
}

TensorVector::TensorVector(int local_dim, int sites, CVector entries,
                           std::int64_t guard)
    : d_(local_dim), n_(sites), vec_(std::move(entries)) {
  const std::int64_t side = tensor_side(local_dim, sites, guard);
  if (vec_.size() != side)
    throw std::invalid_argument("vector entries must have length d^n");
}

TensorOperator identity(int d, int n, std::int64_t guard) {
  const std::int64_t side = tensor_side(d, n, guard);
  return TensorOperator(d, n, Matrix::Identity(side, side), guard);
}

TensorVector omega_vector(int d, int n, int j, int k) {
  tensor_side(d, n, kDimGuard);
  check_site(j, n);
  check_site(k, n);
  if (j == k) throw std::invalid_argument("pair sites must differ");
  if (j > k) throw std::invalid_argument("pair sites must be given in increasing order");
  CVector v = CVector::Zero(std::int64_t(d) * d);
  for (int i = 0; i < d; ++i) v[std::int64_t(i) * d + i] = 1.0;
  return TensorVector(d, 2, std::move(v));
}

TensorVector omega_embed(int d, int n, int j, int k, const TensorVector& rest,
                         std::int64_t guard) {
  const std::int64_t side = tensor_side(d, n, guard);
  check_site(j, n);
  check_site(k, n);
  if (j == k) throw std::invalid_argument("pair sites must differ");
  if (j > k) throw std::invalid_argument("pair sites must be given in increasing order");
  if (rest.local_dim() != d || rest.sites() != n - 2)
    throw std::invalid_argument("rest must live on the other n-2 sites");

  const auto str = strides(d, n);
  std::vector<std::int64_t> others;
  for (int s = 0; s < n; ++s)
    if (s != j && s != k) others.push_back(str[s]);

  CVector v = CVector::Zero(side);
  const std::int64_t rest_len = rest.length();
  for (std::int64_t m = 0; m < rest_len; ++m) {
    // spread the digits of m over the non-pair sites
    std::int64_t base = 0, rem = m;
    for (std::size_t t = others.size(); t-- > 0;) {
      base += (rem % d) * others[t];
      rem /= d;
    }
    for (int i = 0; i < d; ++i)
      v[base + i * (str[j] + str[k])] += rest.vector()[m];
  }
  return TensorVector(d, n, std::move(v), guard);
}

TensorOperator omega_projector(int d, int n, int j, int k, std::int64_t guard) {
  const std::int64_t side = tensor_side(d, n, guard);
  check_site(j, n);
  check_site(k, n);
  if (j == k) throw std::invalid_argument("pair sites must differ");
  if (j > k) throw std::invalid_argument("pair sites must be given in increasing order");

  const auto str = strides(d, n);
  std::vector<std::int64_t> others;
  for (int s = 0; s < n; ++s)
    if (s != j && s != k) others.push_back(str[s]);

  Matrix m = Matrix::Zero(side, side);
  const std::int64_t rest_len = side / (std::int64_t(d) * d);
  const std::int64_t pair_stride = str[j] + str[k];
  for (std::int64_t t = 0; t < rest_len; ++t) {
    std::int64_t base = 0, rem = t;
    for (std::size_t s = others.size(); s-- > 0;) {
      base += (rem % d) * others[s];
      rem /= d;
    }
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        m(base + r * pair_stride, base + c * pair_stride) += 1.0;
  }
  return TensorOperator(d, n, std::move(m), guard);
}

TensorOperator partial_transpose(const TensorOperator& m, int site) {
  const int n = m.sites(), d = m.local_dim();
  check_site(site, n);
  const auto str = strides(d, n);
  const std::int64_t stride = str[site];
  const std::int64_t side = m.side();
  Matrix out(side, side);
  for (std::int64_t r = 0; r < side; ++r) {
    const int rd = static_cast<int>((r / stride) % d);
    for (std::int64_t c = 0; c < side; ++c) {
      const int cd = static_cast<int>((c / stride) % d);
      const std::int64_t r2 = r + std::int64_t(cd - rd) * stride;
      const std::int64_t c2 = c + std::int64_t(rd - cd) * stride;
      out(r2, c2) = m.matrix()(r, c);
    }
  }
  return TensorOperator(d, n, std::move(out), side);
}

TensorOperator partial_trace(const TensorOperator& m, const std::vector<int>& keep_in) {
  const int n = m.sites(), d = m.local_dim();
  std::vector<int> keep = keep_in;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty()) throw std::invalid_argument("keep set must be nonempty");
  for (int s : keep) check_site(s, n);

  std::vector<int> traced;
  for (int s = 0; s < n; ++s)
    if (!std::binary_search(keep.begin(), keep.end(), s)) traced.push_back(s);

  const auto str = strides(d, n);
  const auto spread_table = [&](const std::vector<int>& sites) {
    std::int64_t count = 1;
    for (std::size_t i = 0; i < sites.size(); ++i) count *= d;
    std::vector<std::int64_t> table(count, 0);
    for (std::int64_t packed = 0; packed < count; ++packed) {
      std::int64_t base = 0, rem = packed;
      for (std::size_t t = sites.size(); t-- > 0;) {
        base += (rem % d) * str[sites[t]];
        rem /= d;
      }
      table[packed] = base;
    }
    return table;
  };

  const auto kb = spread_table(keep);
  const auto tb = spread_table(traced);
  const std::int64_t so = static_cast<std::int64_t>(kb.size());

  Matrix out = Matrix::Zero(so, so);
  for (std::int64_t ro = 0; ro < so; ++ro)
    for (std::int64_t co = 0; co < so; ++co) {
      Complex sum = 0.0;
      for (std::int64_t t : tb) sum += m.matrix()(kb[ro] + t, kb[co] + t);
      out(ro, co) = sum;
    }
  return TensorOperator(d, static_cast<int>(keep.size()), std::move(out), so);
}

TensorOperator tensor_product(const TensorOperator& a, const TensorOperator& b) {
  if (a.local_dim() != b.local_dim())
    throw std::invalid_argument("tensor factors must share the local dimension");
  const std::int64_t sa = a.side(), sb = b.side();
  Matrix out(sa * sb, sa * sb);
  for (std::int64_t r = 0; r < sa; ++r)
    for (std::int64_t c = 0; c < sa; ++c)
      out.block(r * sb, c * sb, sb, sb) = a.matrix()(r, c) * b.matrix();
  return TensorOperator(a.local_dim(), a.sites() + b.sites(), std::move(out),
                        sa * sb);
}

TensorVector tensor_product(const TensorVector& a, const TensorVector& b) {
  if (a.local_dim() != b.local_dim())
    throw std::invalid_argument("tensor factors must share the local dimension");
  const std::int64_t la = a.length(), lb = b.length();
  CVector out(la * lb);
  for (std::int64_t i = 0; i < la; ++i)
    out.segment(i * lb, lb) = a.vector()[i] * b.vector();
  return TensorVector(a.local_dim(), a.sites() + b.sites(), std::move(out), la * lb);
}

TensorOperator outer(const TensorVector& v) {
  Matrix m = v.vector() * v.vector().adjoint();
  return TensorOperator(v.local_dim(), v.sites(), std::move(m), v.length());
}

double hermiticity_residual(const TensorOperator& m) {
  return (m.matrix() - m.matrix().adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace cloneq

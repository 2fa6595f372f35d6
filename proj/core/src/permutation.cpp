#include "cloneq/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace cloneq {

namespace {

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v])
      throw std::invalid_argument("image array is not a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::transposition(int n, int i, int j) {
  if (i < 0 || i >= n || j < 0 || j >= n)
    throw std::invalid_argument("transposition index out of range");
  auto p = identity(n);
  std::swap(p.images_[i], p.images_[j]);
  return p;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (size() != other.size())
    throw std::invalid_argument("composed permutations must have equal degree");
  std::vector<int> im(images_.size());
  for (int i = 0; i < size(); ++i) im[i] = images_[other.images_[i]];
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (int i = 0; i < size(); ++i) im[images_[i]] = i;
  return Permutation(std::move(im));
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images_.size(), false);
  for (int s = 0; s < size(); ++s) {
    if (seen[s]) continue;
    std::vector<int> cyc;
    int cur = s;
    while (!seen[cur]) {
      seen[cur] = true;
      cyc.push_back(cur);
      cur = images_[cur];
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

int Permutation::cycle_count() const { return static_cast<int>(cycles().size()); }

std::vector<Permutation> all_permutations(int n) {
  if (n < 0) throw std::invalid_argument("degree must be nonnegative");
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(factorial(n)));
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

std::vector<Permutation> enumerate_sigma_ab(int N, int a, int b) {
  if (N < 1) throw std::invalid_argument("N must be at least 1");
  if (a < 1 || a > N || b < 1 || b > N)
    throw std::invalid_argument("a and b must lie in 1..N");

  std::vector<int> positions;  // free positions, ascending
  for (int p = 1; p <= N; ++p)
    if (p != b) positions.push_back(p);
  std::vector<int> values;  // free values, ascending start
  for (int v = 1; v <= N; ++v)
    if (v != a) values.push_back(v);

  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(factorial(N - 1)));
  do {
    std::vector<int> im(N + 1);
    im[0] = a;
    im[b] = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) im[positions[i]] = values[i];
    out.emplace_back(std::move(im));
  } while (std::next_permutation(values.begin(), values.end()));
  return out;
}

Permutation cycle_between(int i, int j, int n) {
  if (n < 0) throw std::invalid_argument("degree must be nonnegative");
  if (i < 0 || j < 0 || i > n || j > n)
    throw std::invalid_argument("shift endpoints out of range");
  auto p = Permutation::identity(n);
  std::vector<int> im = p.images();
  if (j < i) {
    // ((i-1), (i-2), ..., j)
    for (int k = i - 1; k > j; --k) im[k] = k - 1;
    if (i - 1 > j) im[j] = i - 1;
  } else if (i < j) {
    // (i, (i+1), ..., (j-1))
    for (int k = i; k < j - 1; ++k) im[k] = k + 1;
    if (j - 1 > i) im[j - 1] = i;
  }
  return Permutation(std::move(im));
}

Permutation sigma_hat_composite(const Permutation& sigma_hat, int a, int b, int c) {
  const int n = sigma_hat.size();  // N - 1
  Permutation pi_bc = cycle_between(b - 1, 0, n);
  if (c != b) pi_bc = pi_bc.compose(cycle_between(c - 1, b - 1, n));
  return cycle_between(0, a - 1, n).compose(sigma_hat).compose(pi_bc);
}

TensorOperator permutation_operator(const Permutation& sigma, int d,
                                    std::int64_t guard) {
  const int n = sigma.size();
  const std::int64_t side = tensor_side(d, n, guard);
  std::vector<std::int64_t> str(n);
  std::int64_t s = 1;
  for (int k = n - 1; k >= 0; --k) {
    str[k] = s;
    s *= d;
  }
  Matrix m = Matrix::Zero(side, side);
  for (std::int64_t col = 0; col < side; ++col) {
    // row digit at sigma(k) equals column digit at k
    std::int64_t row = 0, rem = col;
    for (int k = n - 1; k >= 0; --k) {
      row += (rem % d) * str[sigma(k)];
      rem /= d;
    }
    m(row, col) = 1.0;
  }
  return TensorOperator(d, n, std::move(m), guard);
}

TensorOperator ptp_operator(const Permutation& sigma, int d, std::int64_t guard) {
  return partial_transpose(permutation_operator(sigma, d, guard), 0);
}

PtDecomposition decompose_partial_transpose(const Permutation& sigma) {
  const int n = sigma.size();
  if (n < 2) throw std::invalid_argument("need at least two sites");
  const int a = sigma(0);
  if (a == 0)
    throw std::invalid_argument("decomposition requires sigma(0) != 0");
  const int b = sigma.inverse()(0);
  const int N = n - 1;

  // Exhaustive search over S_{N-1} at d = 2; the decomposition is unique and
  // d-independent, so a match here identifies sigma_hat.
  const int d = 2;
  const std::int64_t guard = tensor_side(d, n, std::int64_t(1) << 30);
  const Matrix lhs = ptp_operator(sigma, d, guard).matrix();
  const Matrix t1 = permutation_operator(Permutation::transposition(n, 1, a), d, guard).matrix();
  const Matrix t2 = permutation_operator(Permutation::transposition(n, 1, b), d, guard).matrix();
  const Matrix om = outer(omega_vector(d, 2, 0, 1)).matrix();

  for (const auto& tau : all_permutations(N - 1)) {
    const Matrix mid = tensor_product(
        TensorOperator(d, 2, om), permutation_operator(tau, d, guard)).matrix();
    if ((lhs - t1 * mid * t2).cwiseAbs().maxCoeff() < 0.5)
      return PtDecomposition{a, b, tau};
  }
  throw std::logic_error("no structural decomposition found");  // unreachable
}

TensorOperator symmetric_projector(int N, int d, std::int64_t guard) {
  const std::int64_t side = tensor_side(d, N, guard);
  Matrix sum = Matrix::Zero(side, side);
  std::int64_t count = 0;
  for (const auto& sigma : all_permutations(N)) {
    sum += permutation_operator(sigma, d, guard).matrix();
    ++count;
  }
  sum /= static_cast<double>(count);
  return TensorOperator(d, N, std::move(sum), guard);
}

std::int64_t sym_dim(int N, int d) {
  if (N < 0 || d < 2) throw std::invalid_argument("need N >= 0 and d >= 2");
  // binomial(d + N - 1, N), exact in integer arithmetic
  std::int64_t r = 1;
  for (int i = 1; i <= N; ++i) {
    r = r * (d - 1 + i);
    r /= i;  // divides exactly: r is a running binomial
  }
  return r;
}

}  // namespace cloneq

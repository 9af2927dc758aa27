#include "indexforge/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "indexforge/error.hpp"

namespace indexforge {

SymmetricMatrix::SymmetricMatrix(std::size_t n, std::vector<double> entries, double tolerance)
    : n_(n), entries_(std::move(entries))
{
  if (n_ == 0 || entries_.size() != n_ * n_) {
    throw Error(ErrorKind::InvalidMatrix, "symmetric matrix needs n*n entries with n >= 1");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      double v = entries_[i * n_ + j];
      if (!std::isfinite(v)) throw Error(ErrorKind::InvalidMatrix, "matrix entry is not finite");
      if (j > i && std::abs(v - entries_[j * n_ + i]) > tolerance) {
        throw Error(ErrorKind::NotSymmetric,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs from its transpose",
                    {{"row", std::to_string(i)}, {"column", std::to_string(j)}});
      }
    }
  }
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t n)
{
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return SymmetricMatrix(n, std::move(e));
}

double SymmetricMatrix::trace() const
{
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += entries_[i * n_ + i];
  return t;
}

std::vector<EigenPair> eigen_symmetric(const SymmetricMatrix& m, int max_sweeps)
{
  const std::size_t n = m.size();
  std::vector<double> a = m.entries();
  // Work on the exactly symmetric average so rotations keep a(i,j) == a(j,i).
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = 0.5 * (a[i * n + j] + a[j * n + i]);
      a[i * n + j] = a[j * n + i] = v;
    }
  }
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  auto at = [&a, n](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  auto vt = [&v, n](std::size_t i, std::size_t j) -> double& { return v[i * n + j]; };

  const double frobenius2 = std::inner_product(a.begin(), a.end(), a.begin(), 0.0);
  const double tolerance2 = 1e-28 * frobenius2;  // (1e-14 * ||A||_F)^2

  bool converged = false;
  for (int sweep = 0; sweep <= max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += at(p, q) * at(p, q);
    }
    if (off <= tolerance2) {
      converged = true;
      break;
    }
    if (sweep == max_sweeps) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = 0.0;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = at(p, k) = c * akp - s * akq;
          at(k, q) = at(q, k) = s * akp + c * akq;
        }
        at(p, p) -= t * apq;
        at(q, q) += t * apq;
        at(p, q) = at(q, p) = 0.0;

        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = vt(k, p);
          const double vkq = vt(k, q);
          vt(k, p) = c * vkp - s * vkq;
          vt(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    throw Error(ErrorKind::NoConvergence,
                "Jacobi iteration did not converge in " + std::to_string(max_sweeps) + " sweeps",
                {{"max_sweeps", std::to_string(max_sweeps)}});
  }

  std::vector<EigenPair> pairs(n);
  for (std::size_t j = 0; j < n; ++j) {
    pairs[j].value = at(j, j);
    pairs[j].vector.resize(n);
    double norm = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      pairs[j].vector[k] = vt(k, j);
      norm += vt(k, j) * vt(k, j);
    }
    norm = std::sqrt(norm);
    for (double& x : pairs[j].vector) x /= norm;
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const EigenPair& x, const EigenPair& y) { return x.value > y.value; });
  return pairs;
}

}  // namespace indexforge

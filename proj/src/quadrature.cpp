#include "wigcoh/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "wigcoh/core.hpp"

namespace wigcoh {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    throw InvalidState("quadrature rel_tol must be positive");
  }
  if (order != 0 && order < 8) throw InvalidState("quadrature order must be at least 8");
  if (max_order < std::max(order, 8)) {
    throw InvalidState("quadrature max_order must not be below the base order");
  }
  if (max_depth < 1) throw InvalidState("adaptive Simpson depth must be positive");
  if (!(window > 0.0) || !std::isfinite(window)) {
    throw InvalidState("quadrature window must be positive");
  }
}

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights the
// squared first eigenvector components scaled by the total mass.
NodeTable golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mass) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
  const auto n = diag.size();
  NodeTable t;
  t.nodes.resize(n);
  t.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    t.nodes[i] = solver.eigenvalues()(i);
    const double v = solver.eigenvectors()(0, i);
    t.weights[i] = mass * v * v;
  }
  return t;
}

NodeTable build_hermite(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(n - 1);
  for (int j = 1; j < n; ++j) off(j - 1) = std::sqrt(0.5 * j);
  NodeTable t = golub_welsch(diag, off, std::sqrt(std::numbers::pi));

  // Newton polish with orthonormal Hermite polynomials; nodes far in the tail
  // overflow the recurrence and keep their eigen-solver values.
  for (int i = 0; i < n; ++i) {
    double x = t.nodes[i];
    for (int iter = 0; iter < 3; ++iter) {
      double p_prev = 0.0;
      double p = std::pow(std::numbers::pi, -0.25);
      for (int j = 0; j < n; ++j) {
        const double next = x * std::sqrt(2.0 / (j + 1)) * p - std::sqrt(double(j) / (j + 1)) * p_prev;
        p_prev = p;
        p = next;
      }
      const double dp = std::sqrt(2.0 * n) * p_prev;
      if (!std::isfinite(p) || !std::isfinite(dp) || dp == 0.0) break;
      const double step = p / dp;
      x -= step;
      const double w = 2.0 / (dp * dp);
      if (std::isfinite(w)) {
        t.nodes[i] = x;
        t.weights[i] = w;
      }
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
  }
  return t;
}

NodeTable build_laguerre(int n) {
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(n - 1);
  for (int j = 0; j < n; ++j) diag(j) = 2.0 * j + 1.0;
  for (int j = 1; j < n; ++j) off(j - 1) = j;
  NodeTable t = golub_welsch(diag, off, 1.0);

  for (int i = 0; i < n; ++i) {
    double x = t.nodes[i];
    for (int iter = 0; iter < 3; ++iter) {
      double l_prev = 0.0;
      double l = 1.0;
      for (int j = 0; j < n; ++j) {
        const double next = ((2.0 * j + 1.0 - x) * l - j * l_prev) / (j + 1.0);
        l_prev = l;
        l = next;
      }
      const double dl = n * (l - l_prev) / x;
      if (!std::isfinite(l) || !std::isfinite(dl) || dl == 0.0) break;
      const double step = l / dl;
      x -= step;
      const double w = 1.0 / (x * dl * dl);
      if (std::isfinite(w) && x > 0.0) {
        t.nodes[i] = x;
        t.weights[i] = w;
      }
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
  }
  return t;
}

const NodeTable& cached(int n, NodeTable (*build)(int),
                        std::map<int, std::unique_ptr<NodeTable>>& cache, std::mutex& mu) {
  if (n < 1) throw InvalidState("quadrature order must be positive");
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<NodeTable>(build(n));
  return *slot;
}

}  // namespace

const NodeTable& gauss_hermite(int n) {
  static std::map<int, std::unique_ptr<NodeTable>> cache;
  static std::mutex mu;
  return cached(n, build_hermite, cache, mu);
}

const NodeTable& gauss_laguerre(int n) {
  static std::map<int, std::unique_ptr<NodeTable>> cache;
  static std::mutex mu;
  return cached(n, build_laguerre, cache, mu);
}

}  // namespace wigcoh

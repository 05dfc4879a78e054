#pragma once

// Stationary distribution of a CTMN: pi Q = 0 with sum(pi) = 1.

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dcb/ctmn.hpp"
#include "dcb/error.hpp"

namespace dcb {

struct Stationary {
  std::vector<double> pi;
  // max_j |(pi Q)_j| and the same scaled by max|Q|.
  double residual = 0.0;
  double relative_residual = 0.0;
  bool used_sparse = false;
};

// Strongly connected components of the transition graph (Tarjan, iterative).
// Components are listed in the order they are completed.
[[nodiscard]] inline std::vector<std::vector<std::size_t>> strongly_connected_components(const RateMatrix& q) {
  const std::size_t n = q.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& t : q.transitions())
    if (t.rate > 0) succ[t.from].push_back(t.to);

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t edge;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& f = call.back();
      if (f.edge < succ[f.v].size()) {
        const std::size_t w = succ[f.v][f.edge++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

namespace detail {

inline std::string describe_components(const std::vector<std::vector<std::size_t>>& comps) {
  std::string msg;
  for (const auto& c : comps) {
    msg += " {";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) msg += ',';
      msg += 's' + std::to_string(c[i] + 1);
    }
    msg += '}';
  }
  return msg;
}

}  // namespace detail

struct SolveOptions {
  double residual_tolerance = 1e-9;
  std::size_t dense_threshold = 5000;
};

// Replaces the last balance equation with the normalization and solves the
// resulting system directly: dense partial-pivot LU up to the threshold,
// sparse LU above. The chain must be irreducible; otherwise the error lists
// every strongly connected component.
[[nodiscard]] inline Stationary solve_equilibrium(const RateMatrix& q, const SolveOptions& opt = {}) {
  const std::size_t n = q.size();
  if (n == 0) throw ModelError("solve_equilibrium: empty state space");
  Stationary st;
  if (n == 1) {
    st.pi = {1.0};
    return st;
  }

  const auto comps = strongly_connected_components(q);
  if (comps.size() != 1)
    throw ModelError("reducible chain: " + std::to_string(comps.size()) +
                     " strongly connected components:" + detail::describe_components(comps));

  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nn);
  rhs(nn - 1) = 1.0;
  Eigen::VectorXd x;

  if (n <= opt.dense_threshold) {
    Eigen::MatrixXd a = q.dense().transpose();
    a.row(nn - 1).setOnes();
    x = a.partialPivLu().solve(rhs);
  } else {
    st.used_sparse = true;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(q.transitions().size() + 2 * n);
    for (const auto& t : q.transitions())
      if (static_cast<Eigen::Index>(t.to) != nn - 1)
        trip.emplace_back(static_cast<int>(t.to), static_cast<int>(t.from), t.rate);
    for (std::size_t i = 0; i + 1 < n; ++i)
      trip.emplace_back(static_cast<int>(i), static_cast<int>(i), q.diagonal(i));
    for (std::size_t j = 0; j < n; ++j) trip.emplace_back(static_cast<int>(nn - 1), static_cast<int>(j), 1.0);
    Eigen::SparseMatrix<double> a(nn, nn);
    a.setFromTriplets(trip.begin(), trip.end());
    a.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw ModelError("solve_equilibrium: sparse factorization failed");
    x = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw ModelError("solve_equilibrium: sparse solve failed");
  }

  // Round-off can leave tiny negatives; anything beyond noise is an error.
  st.pi.assign(x.data(), x.data() + nn);
  double sum = 0.0;
  for (double& p : st.pi) {
    if (!std::isfinite(p)) throw ModelError("solve_equilibrium: non-finite solution (singular system)");
    if (p < 0) {
      if (p < -1e-12) throw ModelError("solve_equilibrium: negative probability " + std::to_string(p));
      p = 0.0;
    }
    sum += p;
  }
  for (double& p : st.pi) p /= sum;

  std::vector<double> r(n, 0.0);
  for (const auto& t : q.transitions()) r[t.to] += st.pi[t.from] * t.rate;
  for (std::size_t i = 0; i < n; ++i) r[i] += st.pi[i] * q.diagonal(i);
  for (double v : r) st.residual = std::max(st.residual, std::abs(v));
  const double scale = q.max_abs();
  st.relative_residual = scale > 0 ? st.residual / scale : st.residual;
  if (st.relative_residual > opt.residual_tolerance)
    throw ModelError("solve_equilibrium: residual " + std::to_string(st.relative_residual) +
                     " exceeds tolerance " + std::to_string(opt.residual_tolerance));
  return st;
}

}  // namespace dcb

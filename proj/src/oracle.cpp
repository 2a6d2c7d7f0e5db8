#include "apsp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <random>
#include <sstream>

#include <json.hpp>

#include "apsp/error.hpp"

namespace apsp {

namespace {

template <typename T>
void dijkstra_from(const SquareMatrix<T>& in, std::size_t source, T* dist) {
  const std::size_t n = in.size();
  const T inf = std::numeric_limits<T>::infinity();
  std::fill(dist, dist + n, inf);
  dist[source] = T(0);

  using Entry = std::pair<T, std::int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.emplace(T(0), static_cast<std::int32_t>(source));
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[u]) continue;  // stale entry
    const T* row = in.row(static_cast<std::size_t>(u));
    for (std::size_t v = 0; v < n; ++v) {
      if (static_cast<std::size_t>(u) == v) continue;
      const T w = row[v];
      if (w == inf) continue;
      const T cand = du + w;
      if (cand < dist[v]) {
        dist[v] = cand;
        heap.emplace(cand, static_cast<std::int32_t>(v));
      }
    }
  }
}

template <typename T>
SquareMatrix<T> dijkstra_apsp_t(const SquareMatrix<T>& in) {
  const std::size_t n = in.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (in(i, i) != T(0)) {
      throw DomainError("dijkstra_apsp requires a zero diagonal");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const T v = in(i, j);
      if (std::isnan(v)) throw DomainError("input contains NaN");
      if (v < T(0)) throw DomainError("dijkstra_apsp requires nonnegative weights");
    }
  }
  SquareMatrix<T> out(n, T(0));
#pragma omp parallel for schedule(dynamic)
  for (std::size_t s = 0; s < n; ++s) {
    dijkstra_from(in, s, out.row(s));
  }
  return out;
}

}  // namespace

DistanceMatrix dijkstra_apsp(const DistanceMatrix& input) {
  return input.visit([](const auto& m) { return DistanceMatrix(dijkstra_apsp_t(m)); });
}

std::optional<PathTrace> reconstruct_path(const PredecessorMatrix& pred,
                                          const DistanceMatrix& input, std::int32_t from,
                                          std::int32_t to) {
  const auto n = static_cast<std::int32_t>(input.size());
  if (from < 0 || from >= n || to < 0 || to >= n) {
    throw DomainError("reconstruct_path: vertex out of range");
  }
  if (from == to) return PathTrace{{from}, 0.0};
  if (pred(from, to) == kNoVertex && input.at(from, to) ==
                                         std::numeric_limits<double>::infinity()) {
    return std::nullopt;  // unreachable
  }

  PathTrace trace;
  trace.vertices.push_back(from);
  // Expand (a, b) segments left to right; each segment appends everything
  // after its first vertex. Work is bounded by the segment count of a simple
  // path; exceeding it means the predecessor matrix encodes a cycle.
  std::vector<std::pair<std::int32_t, std::int32_t>> stack{{from, to}};
  const std::size_t max_segments = 2 * static_cast<std::size_t>(n) + 2;
  std::size_t expanded = 0;
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    if (++expanded > max_segments) {
      throw VerifyError("cycle detected while expanding predecessor matrix");
    }
    const std::int32_t mid = pred(a, b);
    if (mid == kNoVertex) {
      const double w = input.at(a, b);
      if (w == std::numeric_limits<double>::infinity()) {
        throw VerifyError("predecessor entry names a missing edge (" +
                          std::to_string(a) + " -> " + std::to_string(b) + ")");
      }
      trace.vertices.push_back(b);
      trace.total_cost += w;
      continue;
    }
    if (mid == a || mid == b || mid < 0 || mid >= n) {
      throw VerifyError("malformed predecessor entry at (" + std::to_string(a) + ", " +
                        std::to_string(b) + ")");
    }
    stack.emplace_back(mid, b);  // expanded after (a, mid)
    stack.emplace_back(a, mid);
  }
  return trace;
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  for (const CheckResult& c : checks) {
    out << "check " << c.name << ": " << (c.passed ? "PASS" : "FAIL") << " ("
        << c.checked << " checked";
    if (!c.passed) out << ", " << c.failures << " failed";
    out << ")\n";
    for (const CheckFailure& f : c.samples) {
      out << "  at i=" << f.i << " j=" << f.j;
      if (f.k >= 0) out << " k=" << f.k;
      out << ": " << f.detail << "\n";
    }
  }
  out << "sample_seed " << sample_seed << "\n";
  out << (all_passed() ? "verification PASSED" : "verification FAILED") << "\n";
  return out.str();
}

std::string VerificationReport::to_json_text() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const CheckResult& c : checks) {
    nlohmann::json sites = nlohmann::json::array();
    for (const CheckFailure& f : c.samples) {
      nlohmann::json site{{"i", f.i}, {"j", f.j}, {"detail", f.detail}};
      if (f.k >= 0) site["k"] = f.k;
      sites.push_back(std::move(site));
    }
    checks_json.push_back({{"name", c.name},
                           {"passed", c.passed},
                           {"checked", c.checked},
                           {"failures", c.failures},
                           {"sites", std::move(sites)}});
  }
  const nlohmann::json doc{{"all_passed", all_passed()},
                           {"sample_seed", sample_seed},
                           {"checks", std::move(checks_json)}};
  return doc.dump(2);
}

namespace {

constexpr std::size_t kMaxFailureSamples = 8;

void add_failure(CheckResult& check, std::int64_t i, std::int64_t j, std::int64_t k,
                 std::string detail) {
  ++check.failures;
  check.passed = false;
  if (check.samples.size() < kMaxFailureSamples) {
    check.samples.push_back({i, j, k, std::move(detail)});
  }
}

template <typename T>
bool is_integer_valued(const SquareMatrix<T>& m) {
  for (T v : m.data()) {
    if (v == std::numeric_limits<T>::infinity()) continue;
    if (std::rint(v) != v) return false;
  }
  return true;
}

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// exact when tol == 0; otherwise relative
bool values_match(double a, double b, double tol) {
  if (a == b) return true;  // covers matching infinities
  if (tol == 0.0) return false;
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

VerificationReport verify_solution(const DistanceMatrix& input,
                                   const DistanceMatrix& solved,
                                   const PredecessorMatrix& pred,
                                   const VerifyOptions& opts) {
  const std::size_t n = input.size();
  if (solved.size() != n || pred.size() != n) {
    throw DomainError("verify_solution: shape mismatch");
  }
  if (solved.elem_type() != input.elem_type()) {
    throw DomainError("verify_solution: element type mismatch");
  }

  const bool exact =
      input.visit([](const auto& m) { return is_integer_valued(m); });
  const double tol =
      exact ? 0.0 : (input.elem_type() == ElemType::F32 ? 1e-6 : 1e-12);
  const double inf = std::numeric_limits<double>::infinity();

  VerificationReport report;
  report.sample_seed = opts.sample_seed;

  // 1. distances against the independent Dijkstra oracle
  {
    CheckResult check{"distance_equality"};
    const DistanceMatrix expected = dijkstra_apsp(input);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        ++check.checked;
        const double got = solved.at(i, j);
        const double want = expected.at(i, j);
        if (!values_match(got, want, tol)) {
          add_failure(check, i, j, -1,
                      "solved " + fmt_num(got) + " != dijkstra " + fmt_num(want));
        }
      }
    }
    report.checks.push_back(std::move(check));
  }

  // 2. recorded paths decode and cost exactly the solved distance
  {
    CheckResult check{"path_reconstruction"};
    auto check_pair = [&](std::size_t i, std::size_t j) {
      ++check.checked;
      const double want = solved.at(i, j);
      try {
        const auto trace = reconstruct_path(pred, input, static_cast<std::int32_t>(i),
                                            static_cast<std::int32_t>(j));
        if (want == inf) {
          if (trace) add_failure(check, i, j, -1, "path returned for unreachable pair");
        } else if (!trace) {
          add_failure(check, i, j, -1, "no path for finite distance");
        } else if (!values_match(trace->total_cost, want, tol)) {
          add_failure(check, i, j, -1,
                      "path cost " + fmt_num(trace->total_cost) + " != solved " +
                          fmt_num(want));
        }
      } catch (const VerifyError& e) {
        add_failure(check, i, j, -1, e.what());
      }
    };
    if (n <= opts.exhaustive_limit) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) check_pair(i, j);
      }
    } else {
      std::mt19937_64 rng(opts.sample_seed);
      for (std::size_t s = 0; s < opts.path_samples; ++s) {
        check_pair(rng() % n, rng() % n);
      }
    }
    report.checks.push_back(std::move(check));
  }

  // 3a. no solved distance exceeds its input entry
  {
    CheckResult check{"monotonicity"};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        ++check.checked;
        if (!(solved.at(i, j) <= input.at(i, j))) {
          add_failure(check, i, j, -1,
                      "solved " + fmt_num(solved.at(i, j)) + " > input " +
                          fmt_num(input.at(i, j)));
        }
      }
    }
    report.checks.push_back(std::move(check));
  }

  // 3b. triangle inequality on the solved matrix
  {
    CheckResult check{"path_consistency"};
    auto check_triple = [&](std::size_t i, std::size_t j, std::size_t k) {
      ++check.checked;
      const double direct = solved.at(i, j);
      const double via = solved.at(i, k) + solved.at(k, j);
      if (direct > via && !values_match(direct, via, tol)) {
        add_failure(check, i, j, k,
                    "solved " + fmt_num(direct) + " > via " + fmt_num(via));
      }
    };
    if (n <= opts.exhaustive_limit) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          for (std::size_t k = 0; k < n; ++k) check_triple(i, j, k);
        }
      }
    } else {
      std::mt19937_64 rng(opts.sample_seed ^ 0x9e3779b97f4a7c15ULL);
      for (std::size_t s = 0; s < opts.path_samples; ++s) {
        check_triple(rng() % n, rng() % n, rng() % n);
      }
    }
    report.checks.push_back(std::move(check));
  }

  return report;
}

VerificationReport verify_solution(const DistanceMatrix& input, const SolveResult& result,
                                   const VerifyOptions& opts) {
  return verify_solution(input, result.distances, result.predecessors, opts);
}

}  // namespace apsp

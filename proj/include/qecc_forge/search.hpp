#pragma once

// Backtracking search for (f, A) pairs that pass verify().
//
// Columns are placed one qubit at a time as the pair (x_q, z_q) = columns
// (q, k+q). Once qubits 1..q are placed, the image of every error supported
// on them is known, so every such image must already lie in Cset_f. Rows are
// tracked through the partial Gram matrix sum_q (x_q z_q^T + z_q x_q^T) and
// the span of the placed columns.
//
// Two symmetries are always quotiented out, since neither changes the
// error set, the Gram matrix or the column span:
//   - per qubit, (x, z) is replaced by the ordering of {x, z, x^z} with
//     x < z < x^z;
//   - across qubits, pairs are placed in nondecreasing order.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qecc_forge/boolfn.hpp"
#include "qecc_forge/qecc.hpp"
#include "qecc_forge/symplectic.hpp"

namespace qforge {

inline constexpr unsigned kMaxSearchQubits = 12;

enum class SearchMode { first, count, exhaustive };
enum class FSource { given, monomials, enumerate, random };
enum class SearchStatus { found, none, exhausted, rejected };

inline const char* to_string(SearchMode m) {
  switch (m) {
    case SearchMode::first: return "first";
    case SearchMode::count: return "count";
    case SearchMode::exhaustive: return "exhaustive";
  }
  return "?";
}

inline const char* to_string(FSource s) {
  switch (s) {
    case FSource::given: return "given";
    case FSource::monomials: return "monomials";
    case FSource::enumerate: return "enumerate";
    case FSource::random: return "random";
  }
  return "?";
}

inline const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::exhausted: return "exhausted";
    case SearchStatus::rejected: return "rejected";
  }
  return "?";
}

inline SearchMode parse_search_mode(std::string_view s) {
  for (auto m : {SearchMode::first, SearchMode::count, SearchMode::exhaustive}) {
    if (s == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown search mode '" + std::string(s) + "'");
}

inline FSource parse_f_source(std::string_view s) {
  for (auto m : {FSource::given, FSource::monomials, FSource::enumerate, FSource::random}) {
    if (s == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown f source '" + std::string(s) + "'");
}

struct ColumnSearchOptions {
  SearchMode mode = SearchMode::first;
  std::uint64_t budget = 1'000'000;  ///< nodes per call
  unsigned jobs = 1;
  bool pruning = true;  ///< false: full domain, no symmetry breaking, verify at leaves (k <= 3)
};

struct ColumnSearchResult {
  SearchStatus status = SearchStatus::none;
  std::uint64_t nodes = 0;
  std::uint64_t solutions = 0;
  std::vector<SymplecticMatrix> matrices;  ///< first solution, or all of them in exhaustive mode
  bool partial = false;                    ///< the budget cut the search short
  std::string message;
};

/// Rewrites a column assignment into the canonical representative searched
/// with pruning on: each pair ordered as x < z < x^z, pairs sorted.
inline SymplecticMatrix canonical_form(const SymplecticMatrix& a) {
  const unsigned k = a.k();
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (unsigned q = 0; q < k; ++q) {
    std::uint64_t t[3] = {a.columns()[q], a.columns()[k + q], a.columns()[q] ^ a.columns()[k + q]};
    std::sort(t, t + 3);
    pairs.push_back({t[0], t[1]});
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::uint64_t> cols(2 * k);
  for (unsigned q = 0; q < k; ++q) {
    cols[q] = pairs[q].first;
    cols[k + q] = pairs[q].second;
  }
  return SymplecticMatrix::from_columns(k, std::move(cols));
}

namespace detail {

struct Pair {
  std::uint64_t x, z;
  bool operator<(const Pair& o) const { return x != o.x ? x < o.x : z < o.z; }
  bool operator==(const Pair&) const = default;
};

struct SearchState {
  std::vector<std::uint64_t> gram;                 // row masks of the partial Gram matrix
  std::vector<std::uint64_t> span;                 // xor basis, indexed by leading bit
  unsigned rank = 0;
  std::vector<std::vector<std::uint64_t>> levels;  // levels[j]: images of weight-j errors
};

class ColumnSearcher {
 public:
  ColumnSearcher(unsigned k, unsigned d, const ComplementarySet& set,
                 const BooleanFunction& f, const ColumnSearchOptions& opt)
      : k_(k), d_(d), set_(set), f_(f), opt_(opt) {
    const std::uint64_t n = std::uint64_t{1} << k;
    if (opt.pruning) {
      const auto elems = set.elements();
      for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
          const std::uint64_t x = elems[i], z = elems[j];
          if ((x ^ z) > z && set.contains(x ^ z)) domain_.push_back({x, z});
        }
      }
    } else {
      for (std::uint64_t x = 0; x < n; ++x) {
        for (std::uint64_t z = 0; z < n; ++z) domain_.push_back({x, z});
      }
    }
  }

  const std::vector<Pair>& domain() const { return domain_; }

  struct Outcome {
    std::uint64_t nodes = 0;
    bool truncated = false;
    std::vector<std::pair<std::uint64_t, std::vector<Pair>>> solutions;  // (node index, pairs)
  };

  /// Subtree under a fixed first pair (domain index `first`), within `budget` nodes.
  Outcome run_branch(std::size_t first, std::uint64_t budget) {
    out_ = {};
    budget_ = budget;
    chosen_.clear();
    SearchState root;
    root.gram.assign(k_, 0);
    root.span.assign(k_, 0);
    root.levels.assign(d_ >= 2 ? d_ - 1 : 1, {});
    root.levels[0].push_back(0);
    try {
      try_pair(root, first);
    } catch (const Stop&) {
      chosen_.clear();
    }
    return std::move(out_);
  }

 private:
  struct Stop {};

  bool stop_after_solution() const { return opt_.mode == SearchMode::first; }

  // Counts a node for domain_[idx] and descends if it is consistent.
  void try_pair(const SearchState& s, std::size_t idx) {
    if (out_.nodes >= budget_) {
      out_.truncated = true;
      throw Stop{};
    }
    ++out_.nodes;
    const Pair p = domain_[idx];
    SearchState next;
    if (opt_.pruning && !extend(s, p, next)) return;
    chosen_.push_back(p);
    if (chosen_.size() == k_) {
      if (!opt_.pruning ? leaf_verifies() : true) {
        out_.solutions.push_back({out_.nodes, chosen_});
        if (stop_after_solution()) throw Stop{};
      }
    } else {
      const std::size_t start = opt_.pruning ? idx : 0;
      for (std::size_t j = start; j < domain_.size(); ++j) try_pair(next, j);
    }
    chosen_.pop_back();
  }

  bool extend(const SearchState& s, const Pair& p, SearchState& next) const {
    const std::uint64_t u[3] = {p.x, p.z, p.x ^ p.z};
    const std::size_t depth = chosen_.size() + 1;  // qubits placed after this pair
    const std::size_t remaining = k_ - depth;

    next.gram = s.gram;
    for (unsigned j = 0; j < k_; ++j) {
      if ((p.x >> j) & 1U) next.gram[j] ^= p.z;
      if ((p.z >> j) & 1U) next.gram[j] ^= p.x;
    }
    if (static_cast<std::size_t>(gf2_rank_packed(next.gram)) > 2 * remaining) return false;

    next.span = s.span;
    next.rank = s.rank;
    for (std::uint64_t c : {p.x, p.z}) {
      for (int b = static_cast<int>(k_) - 1; b >= 0 && c; --b) {
        if (!((c >> b) & 1U)) continue;
        if (!next.span[b]) {
          next.span[b] = c;
          ++next.rank;
          break;
        }
        c ^= next.span[b];
      }
    }
    if (next.rank + 2 * remaining < k_) return false;

    // Errors touching this qubit: e ^ u for e an image of weight <= d-2.
    next.levels = s.levels;
    const std::size_t top = s.levels.size();  // = d - 1
    for (std::size_t j = 0; j < top; ++j) {
      for (std::uint64_t e : s.levels[j]) {
        for (std::uint64_t v : u) {
          if (!set_.contains(e ^ v)) return false;
          if (j + 1 < top) next.levels[j + 1].push_back(e ^ v);
        }
      }
    }
    for (std::size_t j = 1; j < top; ++j) {
      auto& l = next.levels[j];
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    return true;
  }

  bool leaf_verifies() const {
    const CodeCandidate c{k_, d_, f_, to_matrix(chosen_), ""};
    return verify(c, {.keep_transcript = false}).passed;
  }

 public:
  SymplecticMatrix to_matrix(const std::vector<Pair>& pairs) const {
    std::vector<std::uint64_t> cols(2 * k_);
    for (unsigned q = 0; q < k_; ++q) {
      cols[q] = pairs[q].x;
      cols[k_ + q] = pairs[q].z;
    }
    return SymplecticMatrix::from_columns(k_, std::move(cols));
  }

 private:
  unsigned k_, d_;
  const ComplementarySet& set_;
  const BooleanFunction& f_;
  ColumnSearchOptions opt_;
  std::vector<Pair> domain_;
  std::vector<Pair> chosen_;
  Outcome out_;
  std::uint64_t budget_ = 0;
};

inline std::string check_search_shape(unsigned k, unsigned d) {
  if (k == 0 || k > kMaxSearchQubits) {
    return "search supports 1 <= k <= " + std::to_string(kMaxSearchQubits);
  }
  if (d < 2) return "distance must be at least 2";
  if (d > distance_ceiling(k)) {
    return "d=" + std::to_string(d) + " exceeds ceil((k+3)/2)=" +
           std::to_string(distance_ceiling(k));
  }
  return {};
}

}  // namespace detail

/// Matrices A for which (f, A) passes verify() at distance d. Top-level
/// branches (choice of the first pair) run on separate workers with the full
/// remaining budget each; the merge replays them in order, so the result
/// equals the sequential search for every job count.
inline ColumnSearchResult search_columns(const BooleanFunction& f, unsigned d,
                                         const ColumnSearchOptions& opt = {}) {
  ColumnSearchResult result;
  const unsigned k = f.m();
  if (auto why = detail::check_search_shape(k, d); !why.empty()) {
    result.status = SearchStatus::rejected;
    result.message = why;
    return result;
  }
  if (!opt.pruning && k > 3) {
    result.status = SearchStatus::rejected;
    result.message = "unpruned search is limited to k <= 3";
    return result;
  }
  if (f.is_zero()) {
    result.message = "f has empty support";
    return result;
  }
  const auto set = cset(f);
  detail::ColumnSearcher probe(k, d, set, f, opt);
  const std::size_t branches = probe.domain().size();

  std::vector<detail::ColumnSearcher::Outcome> outcomes(branches);
  const unsigned jobs = std::max(1U, opt.jobs);
  std::uint64_t used = 0;
  bool stop = false;
  for (std::size_t base = 0; base < branches && !stop; base += jobs) {
    const std::size_t hi = std::min<std::size_t>(branches, base + jobs);
    const std::uint64_t cap = opt.budget - used;
    parallel_for(hi - base, jobs, [&](std::size_t b, std::size_t e) {
      detail::ColumnSearcher worker(k, d, set, f, opt);
      for (std::size_t i = base + b; i < base + e; ++i) outcomes[i] = worker.run_branch(i, cap);
    });
    // Replay in branch order as a single sequential search would have run.
    for (std::size_t i = base; i < hi && !stop; ++i) {
      const auto& o = outcomes[i];
      for (const auto& [node, pairs] : o.solutions) {
        if (used + node > opt.budget) break;
        ++result.solutions;
        if (opt.mode != SearchMode::count || result.matrices.empty()) {
          result.matrices.push_back(probe.to_matrix(pairs));
        }
        if (opt.mode == SearchMode::first) {
          used += node;
          stop = true;
          break;
        }
      }
      if (stop) break;
      if (o.truncated || used + o.nodes > opt.budget) {
        result.partial = true;
        used = opt.budget;
        stop = true;
        break;
      }
      used += o.nodes;
    }
  }
  result.nodes = used;
  if (result.solutions > 0) {
    result.status = SearchStatus::found;
    if (result.partial) result.message = "node budget exhausted; results are partial";
  } else if (result.partial) {
    result.status = SearchStatus::exhausted;
    result.message = "node budget of " + std::to_string(opt.budget) + " exhausted";
  } else {
    result.status = SearchStatus::none;
    result.message = "search space exhausted: no matrix exists for this f at d=" + std::to_string(d);
  }
  return result;
}

struct SearchSpec {
  unsigned k = 0;
  std::uint64_t M = 0;
  unsigned d = 2;
  SearchMode mode = SearchMode::first;
  std::uint64_t budget = 1'000'000;  ///< nodes per search_columns call
  FSource f_source = FSource::enumerate;
  std::optional<BooleanFunction> f{};  ///< for FSource::given
  std::uint64_t seed = 1;
  unsigned restarts = 64;            ///< for FSource::random
  unsigned jobs = 1;
};

struct SearchOutcome {
  SearchStatus status = SearchStatus::none;
  std::vector<CodeCertificate> certificates;
  std::uint64_t solutions = 0;  ///< total canonical solutions (count mode)
  std::uint64_t nodes = 0;
  std::uint64_t functions_tried = 0;
  bool complete = true;         ///< no call hit its budget
  std::string message;
};

namespace detail {

// Uniform in [0, n) from a 64-bit draw, defined the same on every platform.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

// Supports of size M containing 0, in lexicographic order; `visit` returns
// false to stop. Any f is a translate of one of these and translates share
// Cset_f, so nothing is lost.
template <class Visit>
void for_each_support(unsigned k, std::uint64_t M, Visit&& visit) {
  const std::uint64_t n = std::uint64_t{1} << k;
  if (M == 0 || M > n) return;
  std::vector<std::uint64_t> idx(M);
  for (std::uint64_t i = 0; i < M; ++i) idx[i] = i;
  while (true) {
    if (!visit(idx)) return;
    std::int64_t i = static_cast<std::int64_t>(M) - 1;
    while (i >= 1 && idx[i] == n - M + static_cast<std::uint64_t>(i)) --i;
    if (i < 1) return;
    ++idx[i];
    for (std::uint64_t j = static_cast<std::uint64_t>(i) + 1; j < M; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline std::vector<BooleanFunction> monomial_functions(unsigned k, std::uint64_t M) {
  std::vector<BooleanFunction> out;
  if (M == 0 || (M & (M - 1)) != 0 || M > (std::uint64_t{1} << k)) return out;
  const unsigned vars = k - static_cast<unsigned>(std::countr_zero(M));
  // Variable sets of size `vars`, highest variables first.
  std::vector<std::uint64_t> masks;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
    if (static_cast<unsigned>(popcount(m)) == vars) masks.push_back(m);
  }
  std::sort(masks.begin(), masks.end(), std::greater<>());
  for (auto m : masks) out.push_back(from_products(k, std::vector<LiteralProduct>{{m, 0}}));
  return out;
}

}  // namespace detail

/// Iterates f over the chosen source, searches columns for each and emits
/// re-verified certificates in source order.
inline SearchOutcome search_codes(const SearchSpec& spec) {
  SearchOutcome out;
  if (auto why = detail::check_search_shape(spec.k, spec.d); !why.empty()) {
    out.status = SearchStatus::rejected;
    out.message = why;
    return out;
  }
  if (spec.M == 0 || spec.M > (std::uint64_t{1} << spec.k)) {
    out.status = SearchStatus::rejected;
    out.message = "M must satisfy 1 <= M <= 2^k";
    return out;
  }

  std::vector<BooleanFunction> functions;
  switch (spec.f_source) {
    case FSource::given:
      if (!spec.f) throw std::invalid_argument("f source 'given' needs a function");
      if (spec.f->m() != spec.k || spec.f->weight() != spec.M) {
        out.status = SearchStatus::rejected;
        out.message = "given f does not have k variables and weight M";
        return out;
      }
      functions.push_back(*spec.f);
      break;
    case FSource::monomials:
      functions = detail::monomial_functions(spec.k, spec.M);
      if (functions.empty()) out.message = "no monomial has weight " + std::to_string(spec.M);
      break;
    case FSource::enumerate:
      detail::for_each_support(spec.k, spec.M, [&](const std::vector<std::uint64_t>& s) {
        functions.push_back(BooleanFunction::from_support(spec.k, s));
        return true;
      });
      break;
    case FSource::random: {
      std::mt19937_64 rng(spec.seed);
      const std::uint64_t n = std::uint64_t{1} << spec.k;
      for (unsigned r = 0; r < spec.restarts; ++r) {
        // Floyd sampling of M-1 points from [1, n), plus 0.
        std::vector<std::uint64_t> picked{0};
        for (std::uint64_t j = n - spec.M + 1; j < n; ++j) {
          const std::uint64_t t = 1 + detail::draw_below(rng, j);
          if (std::find(picked.begin(), picked.end(), t) == picked.end()) {
            picked.push_back(t);
          } else {
            picked.push_back(j);
          }
        }
        std::sort(picked.begin(), picked.end());
        functions.push_back(BooleanFunction::from_support(spec.k, picked));
      }
      out.complete = false;
      break;
    }
  }

  const unsigned jobs = std::max(1U, spec.jobs);
  ColumnSearchOptions copt{spec.mode, spec.budget, 1, true};
  std::vector<ColumnSearchResult> results(functions.size());
  bool stop = false;
  bool any_exhausted = false;
  for (std::size_t base = 0; base < functions.size() && !stop; base += jobs) {
    const std::size_t hi = std::min(functions.size(), base + jobs);
    parallel_for(hi - base, jobs, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = base + b; i < base + e; ++i) {
        results[i] = search_columns(functions[i], spec.d, copt);
      }
    });
    for (std::size_t i = base; i < hi && !stop; ++i) {
      const auto& r = results[i];
      ++out.functions_tried;
      out.nodes += r.nodes;
      out.solutions += r.solutions;
      if (r.partial) any_exhausted = true;
      for (const auto& a : r.matrices) {
        const CodeCandidate c{spec.k, spec.d, functions[i], a,
                              "search k=" + std::to_string(spec.k) + " M=" +
                                  std::to_string(spec.M) + " d=" + std::to_string(spec.d)};
        VerifyReport report;
        auto cert = certify(c, &report, {.keep_transcript = true});
        if (!cert) {
          throw std::logic_error("search produced a candidate that fails verify: " + report.message);
        }
        out.certificates.push_back(std::move(*cert));
      }
      if (spec.mode == SearchMode::first && !out.certificates.empty()) stop = true;
    }
  }
  if (any_exhausted) out.complete = false;
  if (out.solutions > 0) {
    out.status = SearchStatus::found;
  } else if (any_exhausted) {
    out.status = SearchStatus::exhausted;
    if (out.message.empty()) out.message = "node budget exhausted before any solution";
  } else {
    out.status = SearchStatus::none;
    if (out.message.empty()) {
      out.message = out.complete ? "exhaustive search: no code exists with these parameters"
                                 : "no code found among the sampled functions";
    }
  }
  return out;
}

}  // namespace qforge

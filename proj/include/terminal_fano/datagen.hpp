#pragma once

// Dataset generation: balanced labelled samples, quantum-period landscape
// records and exhaustive enumeration of small weight matrices.

#include "terminal_fano/classifier_client.hpp"
#include "terminal_fano/period.hpp"
#include "terminal_fano/terminality.hpp"
#include "terminal_fano/weights.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

namespace terminal_fano {

struct LabeledRecord {
  StandardWeightMatrix matrix;
  bool terminal = false;
  std::string key;
};

struct LandscapeRecord {
  StandardWeightMatrix matrix;
  double prob_terminal = 0;
  double A = 0;
  double B = 0;
  std::int64_t ell = 0;
  std::string key;
};

struct GenerationStats {
  std::uint64_t candidates = 0;  // matrices drawn
  std::uint64_t invalid = 0;     // failed one of the validity conditions
  std::uint64_t filtered = 0;    // wrong label, or below the probability threshold
  std::uint64_t duplicates = 0;  // canonical key already seen

  GenerationStats& operator+=(const GenerationStats& o) {
    candidates += o.candidates;
    invalid += o.invalid;
    filtered += o.filtered;
    duplicates += o.duplicates;
    return *this;
  }
};

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

namespace detail {

// Fills `count` slots. Slot s belongs to shard s % shards; each shard has its
// own random stream and runs on its own thread. Shards deduplicate locally,
// then a sequential merge in slot order redraws any slot whose key was already
// taken, using the owning shard's stream. Output depends only on (seed, shards).
//
// draw(rng, slot, stats) returns a record or nullopt to reject the candidate.
template <class Record, class Draw>
std::vector<Record> fill_slots(std::size_t count, std::size_t shards, std::uint64_t seed, Draw draw,
                               GenerationStats* stats) {
  shards = std::max<std::size_t>(1, std::min(shards, std::max<std::size_t>(1, count)));
  std::vector<Rng> rngs;
  for (std::size_t s = 0; s < shards; ++s) rngs.push_back(make_rng(seed, s + 1));
  std::vector<std::optional<Record>> slots(count);
  std::vector<GenerationStats> shard_stats(shards);

  auto next_unique = [&](std::size_t slot, std::unordered_set<std::string>& seen) {
    const std::size_t s = slot % shards;
    for (;;) {
      std::optional<Record> r = draw(rngs[s], slot, shard_stats[s]);
      if (!r) continue;
      if (!seen.insert(r->key).second) {
        ++shard_stats[s].duplicates;
        continue;
      }
      return std::move(*r);
    }
  };

  auto run_shard = [&](std::size_t s) {
    std::unordered_set<std::string> seen;
    for (std::size_t slot = s; slot < count; slot += shards) slots[slot] = next_unique(slot, seen);
  };
  if (shards == 1) {
    run_shard(0);
  } else {
    std::vector<std::jthread> workers;
    for (std::size_t s = 0; s < shards; ++s) workers.emplace_back(run_shard, s);
  }

  std::unordered_set<std::string> global;
  std::vector<Record> out;
  out.reserve(count);
  for (std::size_t slot = 0; slot < count; ++slot) {
    if (!global.insert(slots[slot]->key).second) {
      ++shard_stats[slot % shards].duplicates;
      slots[slot] = next_unique(slot, global);
    }
    out.push_back(std::move(*slots[slot]));
  }
  if (stats)
    for (const auto& st : shard_stats) *stats += st;
  return out;
}

}  // namespace detail

struct BalancedOptions {
  std::size_t count = 1000;
  std::size_t n = 10;
  std::int64_t bound = 7;
  std::uint64_t seed = 0;
  std::size_t shards = 1;
};

/// count/2 terminal and count/2 non-terminal matrices with distinct canonical
/// keys. Labels are fixed per slot before drawing; candidates are redrawn
/// until terminal_prop1 agrees with the slot's label.
inline std::vector<LabeledRecord> generate_balanced(const BalancedOptions& opt, GenerationStats* stats = nullptr) {
  if (opt.count % 2 != 0) throw std::invalid_argument("generate_balanced: count must be even");
  if (opt.n < 4) throw std::invalid_argument("generate_balanced: need n >= 4");
  if (opt.bound < 1) throw std::invalid_argument("generate_balanced: need bound >= 1");

  std::vector<char> labels(opt.count, 0);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(opt.count / 2), 1);
  Rng label_rng = make_rng(opt.seed, 0);
  std::shuffle(labels.begin(), labels.end(), label_rng);

  auto draw = [&](Rng& rng, std::size_t slot, GenerationStats& st) -> std::optional<LabeledRecord> {
    ++st.candidates;
    StandardWeightMatrix w = sample_random(opt.n, opt.bound, rng);
    if (!validate(w).ok()) {
      ++st.invalid;
      return std::nullopt;
    }
    bool terminal = terminal_prop1(w).terminal;
    if (terminal != static_cast<bool>(labels[slot])) {
      ++st.filtered;
      return std::nullopt;
    }
    std::string key = canonical_key(w);
    return LabeledRecord{std::move(w), terminal, std::move(key)};
  };
  return detail::fill_slots<LabeledRecord>(opt.count, opt.shards, opt.seed, draw, stats);
}

enum class Filter { exact, classifier };

struct LandscapeOptions {
  std::size_t count = 1000;
  std::size_t n = 10;
  std::int64_t bound = 7;
  std::uint64_t seed = 0;
  Filter filter = Filter::exact;
  double threshold = 0.5;
  bool keep_all = false;  // exact filter only: also emit non-terminal records (prob 0)
  std::size_t shards = 1;
  std::string classifier;    // endpoint executable, classifier filter only
  std::size_t batch = 4096;  // classifier batch size
};

namespace detail {

inline std::optional<LandscapeRecord> landscape_record(StandardWeightMatrix w, double prob) {
  GrowthPoint gp;
  try {
    gp = growth_point(w);
  } catch (const period_error&) {
    return std::nullopt;
  }
  std::string key = canonical_key(w);
  return LandscapeRecord{std::move(w), prob, gp.A, gp.B, gp.ell, std::move(key)};
}

}  // namespace detail

/// Random valid standard-form matrices kept by predicted or exact
/// terminality, each with its growth coefficients (A, B) and Fano index.
/// Records are deduplicated by canonical key.
inline std::vector<LandscapeRecord> generate_landscape(const LandscapeOptions& opt, GenerationStats* stats = nullptr) {
  if (opt.n < 4) throw std::invalid_argument("generate_landscape: need n >= 4");
  if (opt.bound < 1) throw std::invalid_argument("generate_landscape: need bound >= 1");

  if (opt.filter == Filter::exact) {
    auto draw = [&](Rng& rng, std::size_t, GenerationStats& st) -> std::optional<LandscapeRecord> {
      ++st.candidates;
      StandardWeightMatrix w = sample_random(opt.n, opt.bound, rng);
      if (!validate(w).ok()) {
        ++st.invalid;
        return std::nullopt;
      }
      double prob = terminal_prop1(w).terminal ? 1.0 : 0.0;
      if (!(prob > opt.threshold) && !opt.keep_all) {
        ++st.filtered;
        return std::nullopt;
      }
      auto rec = detail::landscape_record(std::move(w), prob);
      if (!rec) ++st.invalid;
      return rec;
    };
    return detail::fill_slots<LandscapeRecord>(opt.count, opt.shards, opt.seed, draw, stats);
  }

  // Classifier filter: batches of valid candidates go through the external
  // endpoint; sequential so the output order is fixed by the seed alone.
  ClassifierClient client(opt.classifier);
  Rng rng = make_rng(opt.seed, 1);
  GenerationStats st;
  std::unordered_set<std::string> seen;
  std::vector<LandscapeRecord> out;
  while (out.size() < opt.count) {
    std::vector<StandardWeightMatrix> batch;
    while (batch.size() < opt.batch) {
      ++st.candidates;
      StandardWeightMatrix w = sample_random(opt.n, opt.bound, rng);
      if (!validate(w).ok()) {
        ++st.invalid;
        continue;
      }
      batch.push_back(std::move(w));
    }
    std::vector<double> probs = client.predict(batch);
    for (std::size_t i = 0; i < batch.size() && out.size() < opt.count; ++i) {
      if (!(probs[i] > opt.threshold)) {
        ++st.filtered;
        continue;
      }
      auto rec = detail::landscape_record(batch[i], probs[i]);
      if (!rec) {
        ++st.invalid;
        continue;
      }
      if (!seen.insert(rec->key).second) {
        ++st.duplicates;
        continue;
      }
      out.push_back(std::move(*rec));
    }
  }
  if (stats) *stats += st;
  return out;
}

/// Upper limit on bound^(2N-3) accepted by enumerate_all.
constexpr double kEnumerationBudget = 1e10;

inline bool enumeration_feasible(std::size_t n, std::int64_t bound) {
  return n >= 4 && bound >= 1 &&
         (2.0 * static_cast<double>(n) - 3.0) * std::log10(static_cast<double>(bound)) <= std::log10(kEnumerationBudget);
}

/// Calls fn on every standard-form matrix with N columns and entries in
/// {0..bound}: nondecreasing column sequences (in anticlockwise order) whose
/// first column lies on the horizontal axis and whose last column satisfies
/// a_N < b_N. Validity is not checked.
inline void for_each_standard_matrix(std::size_t n, std::int64_t bound,
                                     const std::function<void(const StandardWeightMatrix&)>& fn) {
  using Col = detail::Column<std::int64_t>;
  std::vector<Col> cols;
  for (std::int64_t x = 0; x <= bound; ++x)
    for (std::int64_t y = 0; y <= bound; ++y)
      if (x || y) cols.push_back({x, y});
  std::sort(cols.begin(), cols.end(), detail::column_less<std::int64_t>);

  std::vector<std::size_t> idx(n);
  std::vector<std::int64_t> a(n), b(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
    if (pos == n) {
      WeightMatrix w(a, b);
      fn(StandardWeightMatrix::from_standard(std::move(w)));
      return;
    }
    for (std::size_t c = from; c < cols.size(); ++c) {
      if (pos == 0 && cols[c].y != 0) break;  // horizontal-axis columns come first
      if (pos == n - 1 && !(cols[c].x < cols[c].y)) continue;
      a[pos] = cols[c].x;
      b[pos] = cols[c].y;
      rec(pos + 1, c);
    }
  };
  rec(0, 0);
}

struct EnumerationSummary {
  std::uint64_t candidates = 0;
  std::uint64_t valid = 0;
  std::uint64_t classes = 0;
  std::uint64_t terminal_classes = 0;
};

/// One record per isomorphism class of valid matrices with a standard form
/// bounded by `bound`, ordered by canonical key. The record's matrix is the
/// standard form named by the key. Throws std::invalid_argument when
/// bound^(2N-3) exceeds kEnumerationBudget.
inline std::vector<LabeledRecord> enumerate_all(std::size_t n, std::int64_t bound,
                                                EnumerationSummary* summary = nullptr) {
  if (!enumeration_feasible(n, bound)) throw std::invalid_argument("enumerate_all: (n, bound) too large");
  EnumerationSummary sum;
  std::map<std::string, bool> classes;
  for_each_standard_matrix(n, bound, [&](const StandardWeightMatrix& w) {
    ++sum.candidates;
    if (!validate(w).ok()) return;
    ++sum.valid;
    std::string key = canonical_key(w);
    if (classes.count(key)) return;
    classes.emplace(std::move(key), terminal_prop1(w).terminal);
  });
  std::vector<LabeledRecord> out;
  for (const auto& [key, terminal] : classes) {
    out.push_back({StandardWeightMatrix::from_standard(parse_text(key)), terminal, key});
    ++sum.classes;
    sum.terminal_classes += terminal;
  }
  if (summary) *summary = sum;
  return out;
}

}  // namespace terminal_fano

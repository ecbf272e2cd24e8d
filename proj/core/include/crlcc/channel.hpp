#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "crlcc/bits.hpp"
#include "crlcc/strong.hpp"
#include "crlcc/weak.hpp"
#include "crlcc/word.hpp"

namespace crlcc {

/// Common face of the weak and strong codes for the channel harness.
class LocalCode {
 public:
  virtual ~LocalCode() = default;

  virtual std::string kind() const = 0;
  virtual std::size_t n() const = 0;
  virtual std::size_t k() const = 0;
  virtual const BlockLayout& layout() const = 0;
  virtual BitString encode(const BitString& x) const = 0;
  virtual DecodeResult decode(const ReceivedWord& w, std::size_t i, std::mt19937_64& rng) const = 0;
  virtual DecodeResult decode_message(const ReceivedWord& w, std::size_t i, std::mt19937_64& rng) const = 0;

  /// Corruption budget the code is analysed for: Delta_J*k/4 (weak),
  /// Delta_J*k/kappa (strong), rounded down.
  virtual std::size_t theorem_budget() const = 0;
  /// Blocks holding copies of the last label group.
  virtual std::vector<std::size_t> repetition_blocks() const = 0;
  /// Label blocks ordered by decreasing fan-out of their (meta-)node.
  virtual std::vector<std::size_t> flood_targets() const = 0;
  /// Red nodes (weak) or red meta-nodes (strong) by exhaustive check.
  virtual std::size_t oracle_red_count(const BitString& w) const = 0;
  /// k' (weak) or t (strong).
  virtual std::size_t red_universe() const = 0;
  /// Warms per-block caches and node colours of an honest word.
  virtual void warm(const ReceivedWord& w) const = 0;

  virtual const WeakCodeParams* weak() const { return nullptr; }
  virtual const StrongCodeParams* strong() const { return nullptr; }
};

class WeakCode final : public LocalCode {
 public:
  explicit WeakCode(WeakCodeParams p) : p_(std::move(p)) {}
  const WeakCodeParams& params() const { return p_; }

  std::string kind() const override { return "weak"; }
  std::size_t n() const override { return p_.n; }
  std::size_t k() const override { return p_.k; }
  const BlockLayout& layout() const override { return p_.layout; }
  BitString encode(const BitString& x) const override { return weak_encode(p_, x); }
  DecodeResult decode(const ReceivedWord& w, std::size_t i, std::mt19937_64& rng) const override {
    return weak_decode(p_, w, i, rng);
  }
  DecodeResult decode_message(const ReceivedWord& w, std::size_t i, std::mt19937_64& rng) const override {
    return weak_decode_message(p_, w, i, rng);
  }
  std::size_t theorem_budget() const override;
  std::vector<std::size_t> repetition_blocks() const override;
  std::vector<std::size_t> flood_targets() const override;
  std::size_t oracle_red_count(const BitString& w) const override;
  std::size_t red_universe() const override { return p_.k_prime; }
  void warm(const ReceivedWord& w) const override;
  const WeakCodeParams* weak() const override { return &p_; }

 private:
  WeakCodeParams p_;
};

class StrongCode final : public LocalCode {
 public:
  explicit StrongCode(StrongCodeParams p) : p_(std::move(p)) {}
  const StrongCodeParams& params() const { return p_; }

  std::string kind() const override { return "strong"; }
  std::size_t n() const override { return p_.n; }
  std::size_t k() const override { return p_.k; }
  const BlockLayout& layout() const override { return p_.layout; }
  BitString encode(const BitString& x) const override { return strong_encode(p_, x); }
  DecodeResult decode(const ReceivedWord& w, std::size_t i, std::mt19937_64& rng) const override {
    return strong_decode(p_, w, i, rng);
  }
  DecodeResult decode_message(const ReceivedWord& w, std::size_t i, std::mt19937_64& rng) const override {
    return strong_decode_message(p_, w, i, rng);
  }
  std::size_t theorem_budget() const override;
  std::vector<std::size_t> repetition_blocks() const override;
  std::vector<std::size_t> flood_targets() const override;
  std::size_t oracle_red_count(const BitString& w) const override;
  std::size_t red_universe() const override { return p_.t; }
  void warm(const ReceivedWord& w) const override;
  const StrongCodeParams* strong() const override { return &p_; }

 private:
  StrongCodeParams p_;
};

struct AttackContext {
  const LocalCode& code;
  const BitString& x;
  const BitString& c;
  std::size_t budget;
};

struct AttackOutcome {
  /// 0-based flipped positions, sorted and distinct.
  std::vector<std::size_t> mask;
  /// 1-based challenge index; 0 lets the harness choose.
  std::size_t challenge = 0;
  /// Blocks the attack aimed at; the harness biases challenges toward them.
  std::vector<std::size_t> targeted_blocks;
};

class AttackStrategy {
 public:
  virtual ~AttackStrategy() = default;
  virtual std::string name() const = 0;
  virtual AttackOutcome run(const AttackContext& ctx, std::mt19937_64& rng) const = 0;
};

/// Attack names: none, random_flip, block_killer[:q], tail_attack[:fraction],
/// red_flood, label_swap. q = 0 (default) spends the whole budget.
std::unique_ptr<AttackStrategy> make_attack(const std::string& spec);
std::vector<std::string> attack_names();

/// Pushes block b beyond its repair radius at a cost of radius_bits + 1 flips.
void kill_block(const BlockLayout& layout, std::size_t b, std::vector<std::size_t>& mask, std::mt19937_64& rng);

/// Flips mask positions of c.
BitString apply_mask(const BitString& c, const std::vector<std::size_t>& mask);

struct RoundRecord {
  std::string strategy;
  std::size_t round = 0;
  std::size_t budget = 0;
  std::size_t mask_weight = 0;
  std::size_t index = 0;
  std::optional<bool> verdict;
  bool truth = false;
  std::size_t queries = 0;
  std::size_t red_count = 0;
  /// Kept only for fooling events so they can be replayed.
  std::vector<std::size_t> mask;
  std::uint64_t round_seed = 0;

  bool wrong() const { return verdict && *verdict != truth; }
};

struct RunOptions {
  std::uint64_t master_seed = 1;
  bool message_mode = false;
  /// Allow budgets above the code's analysed budget.
  bool out_of_theorem = false;
  /// Distinct messages cycled through the rounds (encoded once each).
  std::size_t messages = 2;
  /// Repetitions per block class for the limiting statistic; 0 skips it.
  std::size_t limit_reps = 0;
  /// Rounds on which the limiting statistic is measured.
  std::size_t limit_rounds = 1;
  unsigned threads = 1;
  bool keep_records = true;
  /// Exact budget in bits; overrides tau.
  std::optional<std::size_t> budget_bits;
};

struct RoundStats {
  std::string code;
  std::string strategy;
  std::size_t rounds = 0;
  std::size_t budget = 0;
  bool out_of_theorem = false;
  std::size_t correct = 0;
  std::size_t wrong = 0;
  std::size_t bottom = 0;
  double mean_queries = 0.0;
  std::size_t max_queries = 0;
  /// Two-sided 95% Clopper-Pearson upper bound on the fooling rate.
  double fool_upper95 = 0.0;
  double mean_red_fraction = 0.0;
  std::optional<double> good_fraction;
  std::vector<RoundRecord> records;
  std::vector<RoundRecord> fooling;

  double fool_rate() const { return rounds ? static_cast<double>(wrong) / static_cast<double>(rounds) : 0.0; }
  double bottom_rate() const { return rounds ? static_cast<double>(bottom) / static_cast<double>(rounds) : 0.0; }
  double correct_rate() const { return rounds ? static_cast<double>(correct) / static_cast<double>(rounds) : 0.0; }
};

RoundStats run_round(const LocalCode& code, const AttackStrategy& attack, double tau, std::size_t trials,
                     const RunOptions& opt = {});

struct LimitingReport {
  /// Per block (1-based): 1 when its representative bit decoded correctly
  /// in at least 2/3 of the repetitions.
  std::vector<char> block_good;
  double good_fraction = 0.0;
};
LimitingReport limiting_statistic(const LocalCode& code, const ReceivedWord& w, const BitString& truth,
                                  std::size_t reps, std::mt19937_64& rng);

double clopper_pearson_upper(std::size_t successes, std::size_t trials, double confidence = 0.95);
double clopper_pearson_lower(std::size_t successes, std::size_t trials, double confidence = 0.95);

std::string format_record_header();
std::string format_record(const RoundRecord& r);
std::string format_table(const std::vector<RoundStats>& rows);

}  // namespace crlcc

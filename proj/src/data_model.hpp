#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"

namespace groupcal {

// "disordered" is the positive class throughout.
enum class ClassLabel : uint8_t { healthy = 0, disordered = 1 };

enum class Gender : uint8_t { female = 0, male = 1 };
enum class AgeBand : uint8_t { young = 0, adult = 1, older = 2 };

std::string_view to_string(ClassLabel label);
ClassLabel class_label_from_string(std::string_view token);

// One of the six demographic cells: gender x age band.
struct GroupKey {
  Gender gender = Gender::female;
  AgeBand age_band = AgeBand::young;

  auto operator<=>(const GroupKey&) const = default;

  // Canonical order matches the reporting layout: YF AF OF YM AM OM.
  int index() const { return static_cast<int>(gender) * 3 + static_cast<int>(age_band); }
  std::string code() const;  // "YF", "AM", ...

  static GroupKey from_code(std::string_view code);
  static const std::array<GroupKey, 6>& all();
};

struct ScoredSample {
  std::string sample_id;
  std::string speaker_id;
  GroupKey group;
  double posterior_d = 0.0;  // posterior for "disordered", in [0,1]
  ClassLabel label = ClassLabel::healthy;
  std::optional<int> severity;  // GRBAS grade G in {0..3}; disordered only

  bool operator==(const ScoredSample&) const = default;
};

// Immutable ordered collection of scored samples.
class EvalSet {
 public:
  EvalSet() = default;

  // Validates posterior bounds, severity rules and sample_id uniqueness.
  static EvalSet from_samples(std::vector<ScoredSample> samples);

  // Skips the uniqueness check; bootstrap replicates are sample multisets.
  static EvalSet from_samples_unchecked(std::vector<ScoredSample> samples);

  const std::vector<ScoredSample>& samples() const { return samples_; }
  size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  // Distinct speaker ids in sorted order.
  std::vector<std::string> speakers() const;

  EvalSet subset_group(GroupKey group) const;

  // Same samples with posteriors replaced, order preserved.
  EvalSet with_posteriors(std::vector<double> posteriors) const;

  bool operator==(const EvalSet&) const = default;

 private:
  explicit EvalSet(std::vector<ScoredSample> samples) : samples_(std::move(samples)) {}
  std::vector<ScoredSample> samples_;
};

// Class priors of an evaluation subset; p_h + p_d == 1.
struct Priors {
  double p_h = 0.5;
  double p_d = 0.5;

  static Priors of(double p_h, double p_d);  // validates
};

// Speaker -> fold index; all samples of one speaker share a fold.
struct FoldAssignment {
  int k = 0;
  std::map<std::string, int> fold_of_speaker;

  int fold_of(const std::string& speaker) const;
};

// Age bands: Y 14-30, A 31-55, O >= 56. Under-14 speakers are rejected.
GroupKey derive_group(Gender gender, int age_years);

// CSV exchange format, header mandatory:
//   sample_id,speaker_id,gender,age,posterior_disordered,label,severity
EvalSet parse_eval_csv(std::string_view text);
std::string to_eval_csv(const EvalSet& eval);

Priors empirical_priors(const EvalSet& eval);

// Healthy samples kept; disordered kept iff severity present and >= min_g.
EvalSet filter_severity(const EvalSet& eval, int min_g);

// Distinct speakers shuffled by seed, dealt round-robin onto k folds.
// Depends only on the speaker set and the seed, not on sample order.
FoldAssignment assign_folds(const EvalSet& eval, int k, uint64_t seed);

}  // namespace groupcal

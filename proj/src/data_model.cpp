#include "data_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

namespace groupcal {

std::string_view to_string(ClassLabel label) {
  return label == ClassLabel::healthy ? "healthy" : "disordered";
}

ClassLabel class_label_from_string(std::string_view token) {
  if (token == "healthy") return ClassLabel::healthy;
  if (token == "disordered") return ClassLabel::disordered;
  fail_validation("unknown label token '" + std::string(token) + "'");
}

std::string GroupKey::code() const {
  static constexpr char band_chars[3] = {'Y', 'A', 'O'};
  std::string s;
  s += band_chars[static_cast<int>(age_band)];
  s += gender == Gender::female ? 'F' : 'M';
  return s;
}

GroupKey GroupKey::from_code(std::string_view code) {
  for (const GroupKey& g : all()) {
    if (g.code() == code) return g;
  }
  fail_validation("unknown group code '" + std::string(code) + "'");
}

const std::array<GroupKey, 6>& GroupKey::all() {
  static const std::array<GroupKey, 6> groups = {{
      {Gender::female, AgeBand::young},
      {Gender::female, AgeBand::adult},
      {Gender::female, AgeBand::older},
      {Gender::male, AgeBand::young},
      {Gender::male, AgeBand::adult},
      {Gender::male, AgeBand::older},
  }};
  return groups;
}

namespace {

void validate_sample(const ScoredSample& s, const std::string& where) {
  if (!(s.posterior_d >= 0.0 && s.posterior_d <= 1.0)) {
    fail_validation(where + ": posterior_disordered " + std::to_string(s.posterior_d) +
                    " outside [0,1]");
  }
  if (s.severity) {
    if (*s.severity < 0 || *s.severity > 3) {
      fail_validation(where + ": severity " + std::to_string(*s.severity) + " outside {0..3}");
    }
    if (s.label != ClassLabel::disordered) {
      fail_validation(where + ": severity present on a healthy sample");
    }
  }
  if (s.sample_id.empty()) fail_validation(where + ": empty sample_id");
  if (s.speaker_id.empty()) fail_validation(where + ": empty speaker_id");
}

}  // namespace

EvalSet EvalSet::from_samples(std::vector<ScoredSample> samples) {
  std::unordered_set<std::string_view> ids;
  ids.reserve(samples.size());
  for (const ScoredSample& s : samples) {
    validate_sample(s, "sample '" + s.sample_id + "'");
    if (!ids.insert(s.sample_id).second) {
      fail_validation("duplicate sample_id '" + s.sample_id + "'");
    }
  }
  return EvalSet(std::move(samples));
}

EvalSet EvalSet::from_samples_unchecked(std::vector<ScoredSample> samples) {
  return EvalSet(std::move(samples));
}

std::vector<std::string> EvalSet::speakers() const {
  std::set<std::string> distinct;
  for (const ScoredSample& s : samples_) distinct.insert(s.speaker_id);
  return {distinct.begin(), distinct.end()};
}

EvalSet EvalSet::subset_group(GroupKey group) const {
  std::vector<ScoredSample> out;
  for (const ScoredSample& s : samples_) {
    if (s.group == group) out.push_back(s);
  }
  return EvalSet(std::move(out));
}

EvalSet EvalSet::with_posteriors(std::vector<double> posteriors) const {
  if (posteriors.size() != samples_.size()) {
    fail_validation("posterior vector size " + std::to_string(posteriors.size()) +
                    " does not match sample count " + std::to_string(samples_.size()));
  }
  std::vector<ScoredSample> out = samples_;
  for (size_t i = 0; i < out.size(); ++i) {
    if (!(posteriors[i] >= 0.0 && posteriors[i] <= 1.0)) {
      fail_validation("replacement posterior outside [0,1] at index " + std::to_string(i));
    }
    out[i].posterior_d = posteriors[i];
  }
  return EvalSet(std::move(out));
}

Priors Priors::of(double p_h, double p_d) {
  if (!(p_h >= 0.0) || !(p_d >= 0.0) || std::abs(p_h + p_d - 1.0) > 1e-12) {
    fail_validation("invalid priors (" + std::to_string(p_h) + ", " + std::to_string(p_d) + ")");
  }
  return Priors{p_h, p_d};
}

int FoldAssignment::fold_of(const std::string& speaker) const {
  auto it = fold_of_speaker.find(speaker);
  if (it == fold_of_speaker.end()) {
    fail_validation("speaker '" + speaker + "' has no fold assignment");
  }
  return it->second;
}

GroupKey derive_group(Gender gender, int age_years) {
  if (age_years < 14) {
    fail_validation("age " + std::to_string(age_years) + " below 14 is rejected");
  }
  AgeBand band = age_years <= 30 ? AgeBand::young : age_years <= 55 ? AgeBand::adult : AgeBand::older;
  return GroupKey{gender, band};
}

namespace {

constexpr std::string_view kCsvHeader =
    "sample_id,speaker_id,gender,age,posterior_disordered,label,severity";

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

int parse_int_field(std::string_view text, const std::string& where) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail_validation(where + ": '" + std::string(text) + "' is not an integer");
  }
  return value;
}

double parse_double_field(std::string_view text, const std::string& where) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail_validation(where + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

}  // namespace

EvalSet parse_eval_csv(std::string_view text) {
  std::vector<ScoredSample> samples;
  size_t pos = 0;
  int line_no = 0;
  bool header_seen = false;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line =
        eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (!header_seen) {
      if (line != kCsvHeader) {
        fail_validation("line 1: expected header '" + std::string(kCsvHeader) + "'");
      }
      header_seen = true;
      continue;
    }

    const std::string where = "line " + std::to_string(line_no);
    std::vector<std::string_view> f = split_fields(line);
    if (f.size() != 7) {
      fail_validation(where + ": expected 7 fields, found " + std::to_string(f.size()));
    }

    ScoredSample s;
    s.sample_id = std::string(f[0]);
    s.speaker_id = std::string(f[1]);
    Gender gender;
    if (f[2] == "F") {
      gender = Gender::female;
    } else if (f[2] == "M") {
      gender = Gender::male;
    } else {
      fail_validation(where + ": gender must be F or M, found '" + std::string(f[2]) + "'");
    }
    int age = parse_int_field(f[3], where + " field age");
    if (age < 14) {
      fail_validation(where + ": age " + std::to_string(age) +
                      " below 14 is rejected at ingestion");
    }
    s.group = derive_group(gender, age);
    s.posterior_d = parse_double_field(f[4], where + " field posterior_disordered");
    if (!(s.posterior_d >= 0.0 && s.posterior_d <= 1.0)) {
      fail_validation(where + " field posterior_disordered: value outside [0,1]");
    }
    try {
      s.label = class_label_from_string(f[5]);
    } catch (const Error& e) {
      fail_validation(where + " field label: " + e.what());
    }
    if (!f[6].empty()) {
      s.severity = parse_int_field(f[6], where + " field severity");
    }
    try {
      validate_sample(s, where);
    } catch (const Error& e) {
      fail_validation(e.what());
    }
    samples.push_back(std::move(s));
  }
  if (!header_seen) fail_validation("empty input: missing CSV header");

  std::unordered_set<std::string_view> ids;
  for (size_t i = 0; i < samples.size(); ++i) {
    if (!ids.insert(samples[i].sample_id).second) {
      fail_validation("duplicate sample_id '" + samples[i].sample_id + "'");
    }
  }
  return EvalSet::from_samples_unchecked(std::move(samples));
}

std::string to_eval_csv(const EvalSet& eval) {
  // Ages are not stored; the lower bound of the band round-trips the group.
  static constexpr int band_age[3] = {14, 31, 56};
  std::ostringstream out;
  out << kCsvHeader << '\n';
  char buf[32];
  for (const ScoredSample& s : eval.samples()) {
    out << s.sample_id << ',' << s.speaker_id << ','
        << (s.group.gender == Gender::female ? 'F' : 'M') << ','
        << band_age[static_cast<int>(s.group.age_band)] << ',';
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), s.posterior_d);
    out.write(buf, ptr - buf);
    out << ',' << to_string(s.label) << ',';
    if (s.severity) out << *s.severity;
    out << '\n';
  }
  return out.str();
}

Priors empirical_priors(const EvalSet& eval) {
  if (eval.empty()) fail_degenerate("empirical_priors: empty evaluation set");
  size_t healthy = 0;
  for (const ScoredSample& s : eval.samples()) {
    if (s.label == ClassLabel::healthy) ++healthy;
  }
  double p_h = static_cast<double>(healthy) / static_cast<double>(eval.size());
  return Priors{p_h, 1.0 - p_h};
}

EvalSet filter_severity(const EvalSet& eval, int min_g) {
  if (min_g < 0 || min_g > 3) {
    fail_validation("min_g " + std::to_string(min_g) + " outside {0..3}");
  }
  std::vector<ScoredSample> kept;
  for (const ScoredSample& s : eval.samples()) {
    if (s.label == ClassLabel::healthy || (s.severity && *s.severity >= min_g)) {
      kept.push_back(s);
    }
  }
  return EvalSet::from_samples_unchecked(std::move(kept));
}

FoldAssignment assign_folds(const EvalSet& eval, int k, uint64_t seed) {
  if (k < 2) fail_validation("fold count k must be >= 2, got " + std::to_string(k));
  std::vector<std::string> speakers = eval.speakers();
  if (speakers.size() < static_cast<size_t>(k)) {
    fail_degenerate("cannot build " + std::to_string(k) + " folds from " +
                    std::to_string(speakers.size()) + " speakers");
  }
  // Fisher-Yates over the sorted speaker list; mt19937_64 output is
  // standardized, so the permutation depends only on (speaker set, seed).
  std::mt19937_64 rng(substream_seed(seed, 0));
  for (size_t i = speakers.size() - 1; i > 0; --i) {
    size_t j = static_cast<size_t>(rng() % (i + 1));
    std::swap(speakers[i], speakers[j]);
  }
  FoldAssignment folds;
  folds.k = k;
  for (size_t i = 0; i < speakers.size(); ++i) {
    folds.fold_of_speaker[speakers[i]] = static_cast<int>(i % static_cast<size_t>(k));
  }
  return folds;
}

}  // namespace groupcal

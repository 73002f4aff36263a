#pragma once

#include "morita/twochar.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace morita {

inline constexpr const char* kScenarioSchema = "morita-scenario/1";
inline constexpr const char* kReportSchema = "morita-report/1";
inline constexpr const char* kVersion = "0.1.0";

// Caps on scenario parameters.
inline constexpr std::size_t kMaxSeeds = 200;
inline constexpr std::size_t kMaxModuleDim = 12;
inline constexpr std::size_t kMaxNmax = 6;
inline constexpr std::size_t kMaxWords = 100;
inline constexpr std::size_t kMaxWordLength = 8;

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckSpec {
  std::string kind;
  std::string target;  // algebra, action or module name, for reports
  AlgebraPtr algebra;
  GroupActionPtr action;
  std::vector<BimodulePtr> modules;
  std::vector<std::string> module_names;
  std::optional<std::uint64_t> first_seed;
  std::size_t seeds = 5;
  std::size_t max_dim = 4;
  std::size_t n_max = 3;
  std::size_t words = 20;
  std::size_t max_len = 6;
  std::optional<std::vector<std::size_t>> expected;  // hochschild dims
  bool vanishing = false;                             // hochschild: HH_n = 0 for n >= 1
  // induction
  Field field;
  GroupTable group;
  std::vector<std::size_t> subgroup;
  std::vector<Matrix> rho;
};

struct Scenario {
  std::string name;
  Field field;
  std::vector<std::pair<std::string, AlgebraPtr>> algebras;
  std::vector<std::pair<std::string, BimodulePtr>> modules;
  std::vector<std::pair<std::string, GroupActionPtr>> actions;
  std::vector<CheckSpec> checks;
};

// Throws ScenarioError; syntax errors carry line and column.
Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario(const std::string& path);

struct RunOptions {
  std::uint64_t seed = 1;                   // first seed for checks that do not set one
  std::optional<std::size_t> degree_bound;  // overrides n_max of hochschild and lunts checks
};

struct HHRow {
  std::size_t degree, dim;
  bool exact;
};

struct CheckResult {
  std::string kind, target;
  TheoremReport report;
  std::vector<HHRow> hochschild;
  std::vector<CharacterEntry> characters;
  double elapsed_ms = 0;
};

struct Report {
  std::string scenario;
  std::string field;
  std::uint64_t seed = 1;
  std::vector<CheckResult> checks;
  double elapsed_ms = 0;
  bool passed() const;
  std::size_t failed() const;
  std::size_t skipped() const;
};

// Throws ScenarioError if the degree bound is above the cap.
Report run(const Scenario& s, const RunOptions& opt = {});

enum class Format { human, json, tsv };
Format parse_format(const std::string& s);

// timing = false drops the elapsed_ms fields.
std::string emit(const Report& r, Format f, bool timing = true);

struct CharacterReport {
  std::string scenario;
  std::vector<std::pair<std::string, std::vector<CharacterEntry>>> tables;
};
CharacterReport run_characters(const Scenario& s, const std::string& only = "");
std::string emit(const CharacterReport& r, Format f);

struct HHReport {
  std::string scenario;
  std::size_t n_max = 4;
  struct Entry {
    std::string algebra;
    std::vector<HHRow> rows;
    bool d_squared_zero = true;
    std::string skipped;
  };
  std::vector<Entry> entries;
  bool passed() const;
};
HHReport run_hochschild(const Scenario& s, std::size_t n_max);
std::string emit(const HHReport& r, Format f);

}  // namespace morita

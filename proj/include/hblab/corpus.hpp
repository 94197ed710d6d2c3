#pragma once

// Built-in example specs with their expected-outcome tables, and the
// reproduce driver comparing a run against them.

#include <cstddef>
#include <string>
#include <vector>

#include "hblab/models.hpp"
#include "hblab/runner.hpp"
#include "hblab/spec_io.hpp"
#include "json.hpp"

namespace hblab {

/// The value at `pointer` inside the result of task `task`.
struct Expectation {
  std::size_t task = 0;
  std::string pointer;
  nlohmann::json expected;
  std::string note;
};

struct Example {
  std::string id;
  std::string title;
  SpaceSpec spec;
  std::vector<Expectation> expected;
};

/// In a fixed order.
const std::vector<Example>& corpus();
/// Throws ParseError on unknown ids.
const Example& find_example(const std::string& id);

/// Family, Y (as "Y", basis kept) and the model's functionals, as a spec with no tasks.
SpaceSpec spec_from_model(const Model& model);

struct CheckResult {
  Expectation expectation;
  nlohmann::json actual;
  bool pass = false;
};

struct Reproduction {
  std::string id;
  nlohmann::json report;
  std::vector<CheckResult> checks;

  bool pass() const;
  nlohmann::json to_json() const;
};

/// Runs with timing off so repeated runs give identical reports.
Reproduction reproduce(const Example& example, RunOptions options = {});

}  // namespace hblab

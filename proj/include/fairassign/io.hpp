#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairassign/assignment.hpp"
#include "fairassign/profile.hpp"
#include "fairassign/rules.hpp"

namespace fairassign::io {

enum class Format { Json, Csv };

// Format from a file extension, if recognizable.
std::optional<Format> format_from_path(const std::string& path);

struct Problem {
  PreferenceProfile profile;
  std::optional<rules::CardinalUtilityProfile> utilities;
};

// Problem files: JSON with schema/agents/objects/preferences (+ optional
// utilities), or CSV with a mandatory header and one row per agent listing
// her objects best to worst. All validation errors raise InputError with
// the offending row or field named.
Problem parse_problem_text(const std::string& text, Format format);
Problem parse_problem_file(const std::string& path,
                           std::optional<Format> format = std::nullopt);

std::string emit_problem(const PreferenceProfile& profile, Format format);

// Assignment files carry the exact rational matrix; decimal fields are
// emitted for display and ignored when parsing.
Assignment parse_assignment_text(const std::string& text, Format format);
Assignment parse_assignment_file(const std::string& path,
                                 std::optional<Format> format = std::nullopt);

std::string emit_assignment(const std::vector<std::string>& agents,
                            const std::vector<std::string>& objects,
                            const Assignment& x, Format format);

enum class GenerateModel { Uniform, PlackettLuce };

// Synthetic instances; deterministic in (n, model, seed, weights). Uniform
// draws every ranking independently; Plackett-Luce orders objects by
// repeated weight-proportional draws, so shared weights induce correlation.
PreferenceProfile generate(int n, GenerateModel model, std::uint64_t seed,
                           const std::vector<double>& weights = {});

}  // namespace fairassign::io

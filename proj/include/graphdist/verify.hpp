#pragma once

#include <functional>
#include <string>
#include <vector>

#include "graphdist/matrix.hpp"

namespace graphdist::verify {

// Instance sizes per check. Desk is the reference configuration; tiny is a
// quick smoke run and extended repeats the checks on more instances.
enum class Profile { Tiny, Desk, Extended };

Profile profile_from_string(const std::string& name);
std::string to_string(Profile p);

struct Hooks {
    // Replaceable so a deliberately broken implementation can be shown to
    // trip the checks that depend on it.
    std::function<double(const Matrix&)> cut_norm;
};

Hooks default_hooks();

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double time_limit = 0.0;  // 0 = none; exceeding it fails the check
};

// Number of checks, ids 1..count().
int count();

// Runs one check. Exceptions are caught and reported as failures.
CheckResult run(int id, Profile profile = Profile::Desk, const Hooks& hooks = default_hooks());

std::vector<CheckResult> run_all(Profile profile = Profile::Desk, const Hooks& hooks = default_hooks());

}  // namespace graphdist::verify

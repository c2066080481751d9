#pragma once

#include "conelab/conemap.hpp"
#include "conelab/constructions.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace conelab {

struct VerifyRow {
    std::string suite;
    std::string instance;
    std::string value;
    std::string expected;
    bool pass = false;
};

struct SuiteOptions {
    std::vector<int> n_range;  // empty means the suite default
    std::vector<int> m_range;
    int grid = 5;
    int random_count = 200;
    std::uint64_t seed = 0;
    int jobs = 0;  // 0 leaves the OpenMP default
};

std::vector<std::string> suite_names();
// Throws std::invalid_argument for an unknown suite.
std::vector<VerifyRow> run_suite(const std::string& suite, const SuiteOptions& opt);

struct SweepRow {
    std::string family;
    int m = 0, n = 0;
    std::string params;
    std::optional<int> gamma;
    std::string predicted;
    std::optional<long> min_bound;
    std::string tight_bound;
    std::string probe;  // observed gamma vs (n-1)(m-1) in the m odd, n even case
    bool pass = false;
    std::string note;
};

struct SweepOptions {
    std::vector<int> m_range;
    std::vector<int> n_range;  // for highdim an empty range means 3..m
    int theta_grid = 5;
    std::vector<std::string> c_values;  // simplicial
    bool all_variants = true;
    std::vector<std::string> variants;
    int jobs = 0;
};

// Cells run concurrently; rows come back in grid order.
std::vector<SweepRow> run_sweep(const std::string& family, const SweepOptions& opt);

// Interior theta grid: k/(grid+1) of the way across (2pi/m, 2pi/(m-1)), k = 1..grid.
std::vector<double> theta_grid(int m, int grid);

// Tightest applicable bound value, if any.
std::optional<long> min_bound(const ExponentReport& r);
// gamma <= every applicable bound, and equality in the minpoly_rays bound only with a figure-1 digraph.
bool bounds_hold(const ExponentReport& r);

}  // namespace conelab

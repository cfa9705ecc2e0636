#pragma once

#include <string>
#include <vector>

#include "koszulkit/hereditary.hpp"
#include "koszulkit/koszul.hpp"

namespace kk {

enum class Agreement { Agree, Disagree, Inconclusive };
std::string to_string(Agreement a);
int exit_code(Agreement a);  // 0 agree, 1 disagree, 3 inconclusive

struct TheoremInputs {
  AlgebraPtr algebra;             // Λ, or the degree-zero algebra A for trivext-koszul and trivext-dual
  std::vector<GradedModule> t;    // summands of T; empty means the degree-zero part
  int n = 1;
  int i_max = 8;
  int d_max = 6;
  int depth = 6;
  int orbit_cap = 10;
  int l_max = 24;
  int serre_i = 3, serre_l = 2;
  std::uint64_t seed = 0;
};

struct TheoremReport {
  std::string id;
  std::string statement;
  Agreement result = Agreement::Inconclusive;
  std::vector<std::pair<std::string, std::string>> facts;  // ordered key/value findings
  std::vector<std::string> bounds;
  bool probabilistic = false;
};

const std::vector<std::string>& theorem_ids();
// Throws InputError for unknown ids or unusable inputs.
TheoremReport verify_theorem(const std::string& id, const TheoremInputs& in);

// The parameter tables compared with the ν-orbits of B.
struct ParamComparison {
  struct Row {
    int i = 0, j = 0;
    int m_formula = 0, sigma_l = 0, sigma_r = 0;
    std::optional<int> m_orbit, endpoint_i, endpoint_j;
    bool match = false;
  };
  std::vector<Row> rows;
  bool all_match = false;
};
ParamComparison compare_parameters(const AlmostParams& p, const std::vector<int>& mu, const StableEndomorphism& b,
                                   const NRepReport& orbits);

}  // namespace kk

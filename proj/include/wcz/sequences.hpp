#pragma once

#include <string>
#include <vector>

#include "wcz/rational.hpp"

#include "json.hpp"

namespace wcz {

// Exact rational sequence table at a fixed depth N. Immutable after
// construction; all entries 1-based (index 0 unused).
struct SequenceTable {
  int n = 0;                 // depth N
  Rat b;                     // b_N
  std::vector<Rat> mu;       // mu_k = 1/(2k 2^k), k = 1..N
  Rat beta;                  // beta_N = 1 - sum mu_k
  std::vector<Rat> alpha;    // alpha_j = sum_{k=j..N} mu_k
  std::vector<Rat> h;        // h^j = -alpha_j^{-1} sum_{k=j..N} 1/(2k)
  std::vector<Rat> g_slope;  // -2^k
  std::vector<Rat> w_level;  // 2^-k

  nlohmann::json to_json() const;
  static SequenceTable from_json(const nlohmann::json& j);
};

// Builds the exact table; rejects n < 1.
SequenceTable build_table(int n);

struct IdentityCheck {
  std::string name;
  bool pass = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_pass() const;
};

// Exact rational verification of the basic identities (no tolerances):
// (1) sum mu_k(-2^k) + beta b = 0
// (2) alpha_1 + beta = 1 and alpha_1 h^1 + beta b = 0
// (3) alpha_{k+1}/alpha_k + mu_k/alpha_k = 1 and
//     h^k = alpha_k^{-1}(alpha_{k+1} h^{k+1} + mu_k(-2^k)), k = 1..N-1
// plus h^N = -2^N and the lower bound alpha_j >= 2^{-j-1}/j.
IdentityReport verify_identities(const SequenceTable& t);

}  // namespace wcz

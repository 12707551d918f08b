#include "wcz/sequences.hpp"

#include <stdexcept>

#include "wcz/jsonio.hpp"

namespace wcz {

SequenceTable build_table(int n) {
  if (n < 1) throw std::invalid_argument("build_table: n must be >= 1");
  SequenceTable t;
  t.n = n;
  t.mu.assign(n + 1, Rat(0));
  t.alpha.assign(n + 1, Rat(0));
  t.h.assign(n + 1, Rat(0));
  t.g_slope.assign(n + 1, Rat(0));
  t.w_level.assign(n + 1, Rat(0));

  Rat harmonic(0);        // sum 1/k
  Rat weighted_har(0);    // sum 1/(k 2^k)
  for (int k = 1; k <= n; ++k) {
    t.mu[k] = Rat(1) / (Rat(2 * k) * pow2(k));
    t.g_slope[k] = -pow2(k);
    t.w_level[k] = pow2(-k);
    harmonic += Rat(1, k);
    weighted_har += Rat(1) / (Rat(k) * pow2(k));
  }
  t.b = harmonic / (Rat(2) - weighted_har);

  Rat mu_sum(0);
  for (int k = 1; k <= n; ++k) mu_sum += t.mu[k];
  t.beta = Rat(1) - mu_sum;

  // alpha_j and h^j by backward accumulation, all exact.
  Rat tail_mu(0);       // sum_{k=j..N} mu_k
  Rat tail_half(0);     // sum_{k=j..N} 1/(2k)
  for (int j = n; j >= 1; --j) {
    tail_mu += t.mu[j];
    tail_half += Rat(1, 2 * j);
    t.alpha[j] = tail_mu;
    t.h[j] = -tail_half / tail_mu;
  }
  return t;
}

bool IdentityReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

IdentityReport verify_identities(const SequenceTable& t) {
  IdentityReport r;
  auto add = [&r](std::string name, bool pass) {
    r.checks.push_back({std::move(name), pass});
  };
  const int n = t.n;

  Rat s(0);
  for (int k = 1; k <= n; ++k) s += t.mu[k] * (-pow2(k));
  add("lemma(1): sum mu_k(-2^k) + beta b = 0", s + t.beta * t.b == 0);

  add("lemma(2): alpha_1 + beta = 1", t.alpha[1] + t.beta == 1);
  add("lemma(2): alpha_1 h^1 + beta b = 0", t.alpha[1] * t.h[1] + t.beta * t.b == 0);

  bool frac_ok = true, rec_ok = true;
  for (int k = 1; k <= n - 1; ++k) {
    frac_ok = frac_ok && (t.alpha[k + 1] / t.alpha[k] + t.mu[k] / t.alpha[k] == 1);
    rec_ok = rec_ok &&
             (t.h[k] == (t.alpha[k + 1] * t.h[k + 1] + t.mu[k] * (-pow2(k))) / t.alpha[k]);
  }
  add("lemma(3): alpha_{k+1}/alpha_k + mu_k/alpha_k = 1", frac_ok);
  add("lemma(3): h^k recursion", rec_ok);

  add("h^N = -2^N", t.h[n] == -pow2(n));

  bool mu_ok = true, alpha_lb = true;
  for (int k = 1; k <= n; ++k) {
    mu_ok = mu_ok && (t.mu[k] == Rat(1) / (Rat(2 * k) * pow2(k)));
    alpha_lb = alpha_lb && (t.alpha[k] >= pow2(-k - 1) / Rat(k));
  }
  add("mu_k = 1/(2k 2^k)", mu_ok);
  add("alpha_j >= 2^{-j-1}/j", alpha_lb);
  return r;
}

nlohmann::json SequenceTable::to_json() const {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "sequence_table";
  j["n"] = n;
  j["b"] = rat_to_json(b);
  j["beta"] = rat_to_json(beta);
  j["mu"] = rat_vec_to_json(mu, 1);
  j["alpha"] = rat_vec_to_json(alpha, 1);
  j["h"] = rat_vec_to_json(h, 1);
  j["g_slope"] = rat_vec_to_json(g_slope, 1);
  j["w_level"] = rat_vec_to_json(w_level, 1);
  return j;
}

SequenceTable SequenceTable::from_json(const nlohmann::json& j) {
  if (j.at("kind") != "sequence_table")
    throw std::invalid_argument("SequenceTable::from_json: wrong kind");
  SequenceTable t;
  t.n = j.at("n").get<int>();
  t.b = rat_from_json(j.at("b"));
  t.beta = rat_from_json(j.at("beta"));
  t.mu = rat_vec_from_json(j.at("mu"), 1);
  t.alpha = rat_vec_from_json(j.at("alpha"), 1);
  t.h = rat_vec_from_json(j.at("h"), 1);
  t.g_slope = rat_vec_from_json(j.at("g_slope"), 1);
  t.w_level = rat_vec_from_json(j.at("w_level"), 1);
  return t;
}

}  // namespace wcz

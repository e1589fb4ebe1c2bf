#include "mudra/fairness.hpp"

#include "mudra/error.hpp"

namespace mudra {

namespace {

EnvyCertificate make_certificate(const RandomAssignment& p, const PreferenceProfile& profile,
                                 AgentIndex i, AgentIndex j, SdVerdict verdict) {
  const Order& order = profile.order(i);
  EnvyCertificate cert{i, j, std::nullopt, prefix_sums(p.row(i), order),
                       prefix_sums(p.row(j), order), verdict};
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (cert.envied_prefix_sums[k] > cert.own_prefix_sums[k]) {
      cert.violated_prefix = order[k];
      break;
    }
  }
  return cert;
}

EnvyVerdict scan(const RandomAssignment& p, const PreferenceProfile& profile, bool weak) {
  require_valid(p);
  if (!(p.instance() == profile.instance())) {
    throw StructuralError("assignment and profile are over different instances");
  }
  for (AgentIndex i = 0; i < p.agent_count(); ++i) {
    for (AgentIndex j = 0; j < p.agent_count(); ++j) {
      if (i == j) continue;
      const SdVerdict v = sd_compare(p.row(i), p.row(j), profile.order(i));
      const bool envy = weak ? v == SdVerdict::SecondStrictlyDominates
                             : (v == SdVerdict::SecondStrictlyDominates ||
                                v == SdVerdict::Incomparable);
      if (envy) return {false, make_certificate(p, profile, i, j, v)};
    }
  }
  return {};
}

}  // namespace

EnvyVerdict is_sd_envy_free(const RandomAssignment& p, const PreferenceProfile& profile) {
  return scan(p, profile, /*weak=*/false);
}

EnvyVerdict is_weak_sd_envy_free(const RandomAssignment& p, const PreferenceProfile& profile) {
  return scan(p, profile, /*weak=*/true);
}

bool replay(const EnvyCertificate& cert, const RandomAssignment& p,
            const PreferenceProfile& profile, bool weak) {
  if (cert.envious >= p.agent_count() || cert.envied >= p.agent_count()) return false;
  const Order& order = profile.order(cert.envious);
  const SdVerdict v = sd_compare(p.row(cert.envious), p.row(cert.envied), order);
  if (v != cert.verdict) return false;
  if (weak) return v == SdVerdict::SecondStrictlyDominates;
  if (!cert.violated_prefix) return false;
  return upper_contour_sum(p.row(cert.envied), order, *cert.violated_prefix) >
         upper_contour_sum(p.row(cert.envious), order, *cert.violated_prefix);
}

EquivarianceVerdict check_anonymity(const Rule& rule, const PreferenceProfile& profile,
                                    const Permutation& pi) {
  RandomAssignment expected = permute_agents(rule(profile), pi);
  RandomAssignment observed = rule(permute_agents(profile, pi));
  const bool holds = expected == observed;
  return {holds, std::move(expected), std::move(observed)};
}

EquivarianceVerdict check_neutrality(const Rule& rule, const PreferenceProfile& profile,
                                     const Permutation& sigma) {
  RandomAssignment expected = permute_objects(rule(profile), sigma);
  RandomAssignment observed = rule(permute_objects(profile, sigma));
  const bool holds = expected == observed;
  return {holds, std::move(expected), std::move(observed)};
}

}  // namespace mudra

#pragma once

#include <optional>
#include <vector>

#include "mudra/model.hpp"
#include "mudra/order.hpp"
#include "mudra/rules.hpp"

namespace mudra {

/// Agent `envious` does not weakly SD-prefer its own row to `envied`'s row
/// (SD envy), or strictly SD-prefers `envied`'s row (weak SD envy).
struct EnvyCertificate {
  AgentIndex envious;
  AgentIndex envied;
  /// SD envy: first object in the envious agent's order whose upper-contour
  /// sum is larger for the envied row.
  std::optional<ObjectIndex> violated_prefix;
  std::vector<Rational> own_prefix_sums;
  std::vector<Rational> envied_prefix_sums;
  SdVerdict verdict;
};

struct EnvyVerdict {
  bool holds = true;
  std::optional<EnvyCertificate> certificate;
};

EnvyVerdict is_sd_envy_free(const RandomAssignment& p, const PreferenceProfile& profile);
EnvyVerdict is_weak_sd_envy_free(const RandomAssignment& p, const PreferenceProfile& profile);

/// Re-checks the certificate against p with order-module comparisons.
bool replay(const EnvyCertificate& certificate, const RandomAssignment& p,
            const PreferenceProfile& profile, bool weak);

/// Holds iff rule(relabelled input) equals the relabelled rule output.
struct EquivarianceVerdict {
  bool holds = true;
  RandomAssignment expected;  // relabelled output of the original profile
  RandomAssignment observed;  // output on the relabelled profile
};

EquivarianceVerdict check_anonymity(const Rule& rule, const PreferenceProfile& profile,
                                    const Permutation& pi);
EquivarianceVerdict check_neutrality(const Rule& rule, const PreferenceProfile& profile,
                                     const Permutation& sigma);

}  // namespace mudra

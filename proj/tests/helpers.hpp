#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "mudra/model.hpp"
#include "mudra/rational.hpp"

namespace mudra::testing {

inline Rational q(const char* text) { return Rational::parse(text); }

inline std::vector<Rational> qs(std::initializer_list<const char*> texts) {
  std::vector<Rational> out;
  for (const char* t : texts) out.push_back(Rational::parse(t));
  return out;
}

inline Order named(const Instance& instance, std::initializer_list<const char*> ids) {
  Order order;
  for (const char* id : ids) order.push_back(*instance.find_object(id));
  return order;
}

inline Instance lettered(std::size_t agents, int quota) {
  std::vector<std::string> a;
  for (std::size_t i = 0; i < agents; ++i) a.push_back("agent" + std::to_string(i + 1));
  std::vector<std::string> o;
  for (std::size_t k = 0; k < agents * static_cast<std::size_t>(quota); ++k) {
    o.push_back(std::string(1, static_cast<char>('a' + k)));
  }
  return Instance(a, o, quota);
}

inline PreferenceProfile profile_of(const Instance& instance,
                                    std::initializer_list<std::initializer_list<const char*>> orders) {
  std::vector<Order> out;
  for (const auto& o : orders) out.push_back(named(instance, o));
  return PreferenceProfile(instance, out);
}

inline RandomAssignment matrix(const Instance& instance,
                               std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<std::vector<Rational>> out;
  for (const auto& r : rows) {
    out.emplace_back();
    for (const char* t : r) out.back().push_back(Rational::parse(t));
  }
  return RandomAssignment(instance, out);
}

}  // namespace mudra::testing

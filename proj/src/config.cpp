#include "olsen/config.hpp"

#include "olsen/errors.hpp"

namespace olsen {

using nlohmann::json;

json schedule_to_json(const EpochSchedule& schedule) {
  if (schedule.kind() == EpochSchedule::Kind::factorial) return json{{"kind", "factorial"}};
  return json{{"kind", "explicit"}, {"values", schedule.boundaries()}};
}

EpochSchedule schedule_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw InputError("schedule config: expected an object with a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "factorial") return EpochSchedule::factorial();
  if (kind == "explicit") {
    if (!j.contains("values"))
      throw InputError("schedule config: explicit schedules need a \"values\" array");
    return EpochSchedule::explicit_list(j.at("values").get<std::vector<std::uint64_t>>());
  }
  throw InputError("schedule config: unknown kind \"" + kind + "\"");
}

json measure_to_json(const MeasureSpec& spec) {
  return json{{"c1", spec.space.alphabet_1.size},
              {"c2", spec.space.alphabet_2.size},
              {"probs_a", spec.probs_a.entries()},
              {"probs_b", spec.probs_b.entries()},
              {"schedule", schedule_to_json(spec.space.schedule)}};
}

MeasureSpec measure_from_json(const json& j) {
  if (!j.is_object()) throw InputError("measure config: expected an object");
  for (const char* key : {"c1", "c2", "probs_a", "probs_b"})
    if (!j.contains(key))
      throw InputError(std::string("measure config: missing field \"") + key + "\"");
  const Alphabet a1(j.at("c1").get<std::uint32_t>());
  const Alphabet a2(j.at("c2").get<std::uint32_t>());
  EpochSchedule schedule = j.contains("schedule") ? schedule_from_json(j.at("schedule"))
                                                  : EpochSchedule::factorial();
  MixedSpaceSpec space(a1, a2, std::move(schedule));
  ProbabilityVector pa(j.at("probs_a").get<std::vector<double>>());
  ProbabilityVector pb(j.at("probs_b").get<std::vector<double>>());
  return MeasureSpec(std::move(space), std::move(pa), std::move(pb));
}

std::string code_to_string(CodeKind code) {
  switch (code) {
    case CodeKind::gray:
      return "gray";
    case CodeKind::gray_reflected:
      return "gray-reflected";
    case CodeKind::identity:
      return "identity";
  }
  throw InputError("unknown code kind");
}

CodeKind code_from_string(std::string_view name) {
  if (name == "gray") return CodeKind::gray;
  if (name == "gray-reflected") return CodeKind::gray_reflected;
  if (name == "identity") return CodeKind::identity;
  throw InputError("unknown code \"" + std::string(name) +
                   "\" (expected gray, gray-reflected or identity)");
}

}  // namespace olsen

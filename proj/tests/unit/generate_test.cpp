#include <cstdint>
#include <map>

#include "decomp/errors.hpp"
#include "decomp/generate.hpp"
#include "decomp/harness.hpp"
#include "decomp/supports.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace decomp;

namespace {

FixtureSpec spec_for(const std::string& profile, std::uint64_t seed, bool corrupt = false) {
  FixtureSpec spec;
  spec.seed = seed;
  spec.profile = profile;
  spec.corrupt = corrupt;
  return spec;
}

const char* kProfiles[] = {"hl-only", "supports", "composition", "diagram"};

}  // namespace

TEST_CASE("equal specs produce byte-identical scenarios") {
  for (const char* profile : kProfiles) {
    CAPTURE(profile);
    const std::string first = scenario_to_json_text(generate_fixture(spec_for(profile, 7)).scenario);
    const std::string again = scenario_to_json_text(generate_fixture(spec_for(profile, 7)).scenario);
    CHECK(first == again);
    const std::string other = scenario_to_json_text(generate_fixture(spec_for(profile, 8)).scenario);
    CHECK(first != other);
  }
}

TEST_CASE("profiles shape the fixture") {
  SUBCASE("operator and filtration only") {
    const GeneratedFixture fx = generate_fixture(spec_for("hl-only", 3));
    REQUIRE(fx.scenario.star.realizations.size() == 1);
    const Realization& r = fx.scenario.star.realizations[0];
    CHECK_FALSE(r.has_compact());
    CHECK_FALSE(r.supports.has_value());
    CHECK_FALSE(r.compose.has_value());
    CHECK(fx.scenario.star.comparisons.empty());
  }
  SUBCASE("support decomposition data") {
    const GeneratedFixture fx = generate_fixture(spec_for("supports", 3));
    REQUIRE(fx.scenario.star.realizations.size() == 1);
    const Realization& r = fx.scenario.star.realizations[0];
    CHECK(r.has_compact());
    CHECK(r.supports.has_value());
    CHECK(r.flag.has_value());
    CHECK_FALSE(r.comap.empty());
    CHECK_FALSE(r.symmetries.empty());
  }
  SUBCASE("composition chain") {
    const GeneratedFixture fx = generate_fixture(spec_for("composition", 3));
    REQUIRE(fx.scenario.star.realizations.size() == 1);
    const Realization& r = fx.scenario.star.realizations[0];
    REQUIRE(r.compose.has_value());
    CHECK_FALSE(r.compose->later.empty());
  }
  SUBCASE("diagram of realizations") {
    const GeneratedFixture fx = generate_fixture(spec_for("diagram", 3));
    CHECK(fx.scenario.star.realizations.size() >= 2);
    CHECK(fx.scenario.star.realizations.size() <= 4);
    CHECK_FALSE(fx.scenario.star.comparisons.empty());
    CHECK(fx.scenario.star.find(fx.scenario.star.rational_vertex) != nullptr);
  }
}

TEST_CASE("generated fixtures pass the full analysis") {
  for (const char* profile : kProfiles) {
    CAPTURE(profile);
    const GeneratedFixture fx = generate_fixture(spec_for(profile, 5));
    CHECK(run_diagram(fx.scenario.star).ok());
  }
}

TEST_CASE("planted primitive dimensions match the analysis") {
  for (std::uint64_t seed : {0u, 5u, 20u}) {
    const GeneratedFixture fx = generate_fixture(spec_for("hl-only", seed));
    const Realization& r = fx.scenario.star.realizations[0];
    const PrimitiveDecomposition dec = primitive_parts(HLTriple(r.space, r.eta));

    std::size_t planted_total = 0;
    for (const auto& [weight, per_degree] : fx.certificate.primitive_dims) {
      for (const auto& [degree, count] : per_degree) {
        CAPTURE(weight);
        CAPTURE(degree);
        REQUIRE(dec.primitive.count(weight));
        REQUIRE(dec.primitive.at(weight).count(degree));
        CHECK(dec.primitive.at(weight).at(degree).dim() == count);
        planted_total += count;
      }
    }
    std::size_t found_total = 0;
    for (const auto& [i, per_degree] : dec.primitive) {
      for (const auto& [degree, subspace] : per_degree) found_total += subspace.dim();
    }
    CHECK(planted_total == found_total);
  }
}

TEST_CASE("planted support summands match the analysis") {
  for (std::uint64_t seed : {1u, 8u}) {
    const GeneratedFixture fx = generate_fixture(spec_for("supports", seed));
    const Realization& r = fx.scenario.star.realizations[0];
    REQUIRE(r.supports.has_value());
    const HLTriple ordinary(r.space, r.eta);
    const HLTriple compact(*r.compact_space, *r.compact_eta);
    const SupportScenario scenario(ordinary, compact, *r.supports);
    const SupportDecomposition dec = scenario.assemble();

    auto check_side = [&](const std::map<std::pair<int, int>,
                                         std::map<std::string, Subspace>>& planted,
                          const std::map<std::pair<int, int>,
                                         std::vector<std::pair<std::string, Subspace>>>& found) {
      for (const auto& [where, by_label] : planted) {
        CAPTURE(where.first);
        CAPTURE(where.second);
        REQUIRE(found.count(where));
        for (const auto& [label, subspace] : by_label) {
          CAPTURE(label);
          bool seen = false;
          for (const auto& [found_label, found_space] : found.at(where)) {
            if (found_label != label) continue;
            seen = true;
            CHECK(found_space == subspace);
          }
          CHECK(seen);
        }
      }
    };
    check_side(fx.certificate.support_summands, dec.ordinary);
    check_side(fx.certificate.support_summands_compact, dec.compact);
  }
}

TEST_CASE("planted family dimensions match the projector ranks") {
  for (std::uint64_t seed : {1u, 6u}) {
    const GeneratedFixture fx = generate_fixture(spec_for("supports", seed));
    const PipelineResult result = run_pipeline(fx.scenario.star.realizations[0]);
    REQUIRE(result.bundle.has_value());
    for (const auto& [kind, per_degree] : fx.certificate.family_dims) {
      REQUIRE(result.bundle->ordinary.count(kind));
      const ProjectorFamily& family = result.bundle->ordinary.at(kind);
      for (const auto& [degree, keyed] : per_degree) {
        for (const auto& [key, dim] : keyed) {
          CAPTURE(family_name(kind));
          CAPTURE(degree);
          CHECK(rank(family.block(key, degree)) == dim);
        }
      }
    }
  }
}

TEST_CASE("planted corruption is always detected") {
  for (const char* profile : kProfiles) {
    for (std::uint64_t seed : {3u, 11u}) {
      CAPTURE(profile);
      CAPTURE(seed);
      const GeneratedFixture fx = generate_fixture(spec_for(profile, seed, true));
      CHECK_FALSE(run_diagram(fx.scenario.star).ok());
    }
  }
}

TEST_CASE("corrupt diagrams keep enough vertices to localize the fault") {
  const GeneratedFixture fx = generate_fixture(spec_for("diagram", 3, true));
  CHECK(fx.scenario.star.realizations.size() >= 3);
  CHECK(fx.scenario.star.realizations.size() <= 4);
}

TEST_CASE("invalid knob combinations are rejected") {
  CHECK_THROWS_AS(generate_fixture(spec_for("nope", 1)), SchemaError);
  FixtureSpec spec = spec_for("hl-only", 1);
  spec.max_weight = 5;
  CHECK_THROWS_AS(generate_fixture(spec), SchemaError);
  spec.max_weight = -1;
  CHECK_THROWS_AS(generate_fixture(spec), SchemaError);
  spec = spec_for("hl-only", 1);
  spec.spread = 0;
  CHECK_THROWS_AS(generate_fixture(spec), SchemaError);
  spec.spread = 5;
  CHECK_THROWS_AS(generate_fixture(spec), SchemaError);
  spec = spec_for("hl-only", 1, true);
  spec.max_weight = 0;
  CHECK_THROWS_AS(generate_fixture(spec), SchemaError);
}

TEST_CASE("generated scenarios survive a text round trip") {
  for (const char* profile : kProfiles) {
    CAPTURE(profile);
    const std::string text =
        scenario_to_json_text(generate_fixture(spec_for(profile, 4)).scenario);
    const ScenarioFile reloaded = scenario_from_json_text(text);
    CHECK(scenario_to_json_text(reloaded) == text);
  }
}

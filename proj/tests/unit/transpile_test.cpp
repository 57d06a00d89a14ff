// Copyright 2026 The PPS Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "generators.hpp"
#include "pps/labels.hpp"
#include "pps/mapping.hpp"
#include "pps/transpile.hpp"

namespace pps {
namespace {

using D = DimensionKey;
using Dims = std::set<DimensionKey>;

IntentSpec full_spec() {
  return parse_spec(testing::read_file(testing::fixture_path("specs/tokyo_full.json")));
}

Dims populated_set(const IntentSpec& spec) {
  auto const p = spec.populated();
  return Dims(p.begin(), p.end());
}

TEST(Projection, DefaultProfileDroppedSetsOnFullSpec) {
  auto const profile = MappingProfile::builtin("table-2");
  auto const spec = full_spec();

  auto const costar = project_costar(spec, profile);
  EXPECT_EQ(costar.dropped, (Dims{D::kWhy, D::kWhen, D::kWhere, D::kHowToDo, D::kHowMuch}));
  EXPECT_EQ(costar.mapped, (Dims{D::kWhat, D::kWho, D::kHowFeel}));
  EXPECT_EQ(costar.unfilled, (std::set<CoStarField>{CoStarField::kContext,
                                                    CoStarField::kResponseFormat}));

  auto const risen = project_risen(spec, profile);
  EXPECT_EQ(risen.dropped, (Dims{D::kWhy, D::kWhen, D::kWhere, D::kHowFeel}));
  EXPECT_EQ(risen.mapped, (Dims{D::kWhat, D::kWho, D::kHowToDo, D::kHowMuch}));
  EXPECT_TRUE(risen.unfilled.empty());
}

TEST(Projection, DefaultProfileFieldContents) {
  auto const spec = full_spec();
  auto const profile = MappingProfile::builtin("table-2");
  auto const c = project_costar(spec, profile).prompt;
  EXPECT_EQ(c.objective, *spec[D::kWhat]);
  EXPECT_EQ(c.audience, spec[D::kWho]);
  EXPECT_EQ(c.style, spec[D::kHowFeel]);
  EXPECT_EQ(c.tone, spec[D::kHowFeel]);
  EXPECT_FALSE(c.context);
  EXPECT_FALSE(c.response_format);

  auto const r = project_risen(spec, profile).prompt;
  EXPECT_EQ(r.role, spec[D::kWho]);
  EXPECT_EQ(r.instructions, *spec[D::kWhat]);
  EXPECT_EQ(r.end_goal, *spec[D::kWhat]);
  EXPECT_EQ(r.steps, spec[D::kHowToDo]);
  EXPECT_EQ(r.narrowing, spec[D::kHowMuch]);
}

TEST(Projection, AlternateProfileMergesInCanonicalOrder) {
  auto const spec = full_spec();
  auto const profile = MappingProfile::builtin("figure-1");
  auto const risen = project_risen(spec, profile);
  EXPECT_EQ(risen.prompt.instructions,
            *spec[D::kWhat] + std::string(kMergeSeparator) + *spec[D::kWhy]);
  EXPECT_EQ(risen.prompt.role, spec[D::kWhy]);
  EXPECT_EQ(risen.dropped, (Dims{D::kWho, D::kWhen, D::kWhere, D::kHowFeel}));

  auto const costar = project_costar(spec, profile);
  EXPECT_EQ(costar.prompt.style, spec[D::kHowToDo]);
  EXPECT_EQ(costar.dropped, (Dims{D::kWhy, D::kWhen, D::kWhere, D::kHowMuch}));
}

TEST(ProjectionProperty, DroppedAndMappedPartitionPopulated) {
  testing::Rng rng(8);
  std::vector<MappingProfile> profiles;
  for (auto const& name : builtin_profile_names()) {
    profiles.push_back(MappingProfile::builtin(name));
  }
  ASSERT_GE(profiles.size(), 2u);
  for (int i = 0; i < 1000; ++i) {
    auto const spec = testing::random_spec(rng);
    auto const populated = populated_set(spec);
    for (auto const& profile : profiles) {
      auto const check = [&](const auto& projection) {
        Dims joined = projection.dropped;
        for (auto d : projection.mapped) {
          ASSERT_FALSE(projection.dropped.contains(d)) << profile.name << " case " << i;
          joined.insert(d);
        }
        ASSERT_EQ(joined, populated) << profile.name << " case " << i;
      };
      check(project_costar(spec, profile));
      check(project_risen(spec, profile));
    }
  }
}

TEST(ProjectionProperty, EverySubsetUnderDefaultProfile) {
  testing::Rng rng(3);
  auto const profile = MappingProfile::builtin("table-2");
  for (unsigned mask = 0; mask < 128; ++mask) {
    auto const spec = testing::random_spec(rng, static_cast<std::uint8_t>(mask));
    auto const costar = project_costar(spec, profile);
    // what always maps, so the objective is never empty.
    EXPECT_EQ(costar.prompt.objective, *spec[D::kWhat]);
    EXPECT_NO_THROW(render_costar(costar.prompt, spec.language));
    EXPECT_NO_THROW(render_risen(project_risen(spec, profile).prompt, spec.language));
  }
}

TEST(Render, NaturalLanguageSectionsInCanonicalOrder) {
  auto spec = make_spec("Write a guide", Language::kEn);
  spec[D::kHowFeel] = "Warm";
  spec[D::kWho] = "Students";
  EXPECT_EQ(render_5w3h_nl(spec),
            "## What (task objective)\nWrite a guide\n\n"
            "## Who (audience and stakeholders)\nStudents\n\n"
            "## How it should feel (tone and quality)\nWarm");
}

TEST(Render, CoStarOmitsAbsentFields) {
  CoStarPrompt p;
  p.objective = "Summarize";
  p.tone = "Calm";
  EXPECT_EQ(render_costar(p, Language::kEn), "## Objective\nSummarize\n\n## Tone\nCalm");
  p.objective.clear();
  EXPECT_THROW(render_costar(p, Language::kEn), RenderError);
}

TEST(Render, RisenRequiresInstructionsAndEndGoal) {
  RisenPrompt p;
  p.instructions = "Do it";
  EXPECT_THROW(render_risen(p, Language::kEn), RenderError);
  p.end_goal = "Done";
  auto const text = render_risen(p, Language::kZh);
  EXPECT_NE(text.find("Do it"), std::string::npos);
}

TEST(Render, InvalidSpecIsRejected) {
  IntentSpec spec;
  spec.metadata = new_metadata();
  EXPECT_THROW(render_5w3h_nl(spec), InvalidSpecError);
  EXPECT_THROW(project_costar(spec, MappingProfile::builtin("table-2")),
               InvalidSpecError);
}

TEST(Profiles, ParseAndRoundTrip) {
  auto const profile = MappingProfile::builtin("table-2");
  EXPECT_EQ(MappingProfile::parse(profile.to_text(), "copy"), profile);
  EXPECT_EQ(resolve_profile("figure-1").name, "figure-1");
  EXPECT_THROW(MappingProfile::builtin("nope"), ConfigError);
}

TEST(Profiles, RejectsBadEdges) {
  EXPECT_THROW(MappingProfile::parse("name = x\ncostar = what -> moon\n", "t"), ConfigError);
  EXPECT_THROW(MappingProfile::parse("name = x\ncostar = whom -> tone\n", "t"), ConfigError);
  EXPECT_THROW(MappingProfile::parse(
                   "name = x\ncostar = what -> tone\ncostar = what -> tone\n", "t"),
               ConfigError);
  EXPECT_THROW(MappingProfile::parse("name = x\ncostar what tone\n", "t"), ParseError);
}

TEST(Labels, BuiltinTablesAreComplete) {
  for (auto lang : kAllLanguages) {
    auto const t = LabelTable::builtin(lang);
    for (auto d : kAllDimensions) EXPECT_FALSE(t.label(d).empty());
    for (auto f : kAllCoStarFields) EXPECT_FALSE(t.label(f).empty());
    for (auto f : kAllRisenFields) EXPECT_FALSE(t.label(f).empty());
  }
  EXPECT_THROW(LabelTable::parse("what = What\n", "partial"), ConfigError);
}

}  // namespace
}  // namespace pps

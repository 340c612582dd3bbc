// tests/test_scoring.cc

// Copyright 2026  The hdspeech Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "hdspeech/rng.h"
#include "hdspeech/scoring.h"
#include "json.hpp"
#include "oracles.h"
#include "test_util.h"

using namespace hdspeech;
using testutil::ErrorOf;

namespace {

using Tokens = std::vector<std::string>;

AlignmentResult AlignText(std::string_view ref, std::string_view hyp) {
  return Align(NormalizeTranscript(ref), NormalizeTranscript(hyp));
}

void CheckReplay(const Tokens &ref, const Tokens &hyp, const AlignmentResult &r) {
  Tokens rr, hh;
  std::size_t s = 0, d = 0, i = 0;
  for (const auto &p : r.ops) {
    if (p.op != EditOp::kIns) rr.push_back(p.ref);
    if (p.op != EditOp::kDel) hh.push_back(p.hyp);
    s += p.op == EditOp::kSub;
    d += p.op == EditOp::kDel;
    i += p.op == EditOp::kIns;
    if (p.op == EditOp::kMatch) CHECK(p.ref == p.hyp);
    if (p.op == EditOp::kSub) CHECK(p.ref != p.hyp);
  }
  CHECK(rr == ref);
  CHECK(hh == hyp);
  CHECK(s == r.subs);
  CHECK(d == r.dels);
  CHECK(i == r.ins);
  CHECK(r.n_ref == ref.size());
}

ScoreReport CohortReport(const std::string &model, Cohort c, std::size_t s,
                         std::size_t d, std::size_t i) {
  return ReportFromCounts(model, c, 1, 10000, s, d, i);
}

}  // namespace

TEST_CASE("normalization examples") {
  CHECK(NormalizeTranscript("Hello, world!") == Tokens{"hello", "world"});
  CHECK(NormalizeTranscript("don't STOP") == Tokens{"don't", "stop"});
  CHECK(NormalizeTranscript("  a--b  ") == Tokens{"a", "b"});
  CHECK(NormalizeTranscript("").empty());
  CHECK(NormalizeTranscript("'quoted' rock'n'roll 'tis x'") ==
        Tokens{"quoted", "rock'n'roll", "tis", "x"});
  CHECK(NormalizeTranscript("it\xE2\x80\x99s") == Tokens{"it's"});
  CHECK(NormalizeTranscript("caf\xC3\xA9 42") == Tokens{"caf\xC3\xA9", "42"});
  CHECK(NormalizeTranscript("a\tb\nc") == Tokens{"a", "b", "c"});
}

TEST_CASE("alignment examples") {
  auto r = AlignText("a b c d e", "a b c d e");
  CHECK(r.errors() == 0);
  r = AlignText("a b c", "a x c");
  CHECK((r.subs == 1 && r.dels == 0 && r.ins == 0));
  r = AlignText("a b c d", "a c d e");
  CHECK((r.subs == 0 && r.dels == 1 && r.ins == 1));
  r = AlignText("a b", "c");
  CHECK((r.subs == 1 && r.dels == 1 && r.ins == 0));
  r = AlignText("a", "b c");
  CHECK((r.subs == 1 && r.dels == 0 && r.ins == 1));
  r = AlignText("", "b c");
  CHECK((r.ins == 2 && r.n_ref == 0));
  r = AlignText("a b", "");
  CHECK(r.dels == 2);
}

TEST_CASE("alignment against the exhaustive oracle") {
  const Tokens alphabet = {"a", "b", "c"};
  std::size_t checked = 0;
  for (std::size_t n = 0; n <= 4; ++n)
    for (std::size_t m = 0; m <= 4; ++m) {
      std::size_t nr = 1, nh = 1;
      for (std::size_t k = 0; k < n; ++k) nr *= 3;
      for (std::size_t k = 0; k < m; ++k) nh *= 3;
      for (std::size_t ci = 0; ci < nr; ++ci)
        for (std::size_t cj = 0; cj < nh; ++cj) {
          Tokens ref(n), hyp(m);
          for (std::size_t k = 0, c = ci; k < n; ++k, c /= 3) ref[k] = alphabet[c % 3];
          for (std::size_t k = 0, c = cj; k < m; ++k, c /= 3) hyp[k] = alphabet[c % 3];
          const auto r = Align(ref, hyp);
          const auto counts = AlignCounts(ref, hyp);
          REQUIRE(r.errors() == oracle::BruteForceEditDistance<std::string>(ref, hyp));
          CHECK((counts.subs == r.subs && counts.dels == r.dels && counts.ins == r.ins));
          CheckReplay(ref, hyp, r);
          ++checked;
        }
    }
  CHECK(checked == 121 * 121);
}

TEST_CASE("pruned matching enumeration equals the plain search") {
  const oracle::MatchingEnumerator fast(5);
  Rng rng(15);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<int> a(rng.Below(6)), b(rng.Below(6));
    for (auto &x : a) x = static_cast<int>(rng.Below(3));
    for (auto &x : b) x = static_cast<int>(rng.Below(3));
    CHECK(fast.Distance<int>(a, b) == oracle::BruteForceEditDistance<int>(a, b));
  }
}

TEST_CASE("wer of identical transcripts is zero") {
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    Tokens x(rng.Below(20));
    for (auto &w : x) w = std::string(1, static_cast<char>('a' + rng.Below(26)));
    CHECK(Align(x, x).errors() == 0);
  }
}

TEST_CASE("report composition") {
  const auto r = ReportFromCounts("m", std::nullopt, 47, 10000, 209, 129, 157);
  CHECK(FormatPercent(r.wer) == "4.95");
  CHECK(r.wer == r.sub_rate + r.del_rate + r.ins_rate);
  CHECK(r.sub_share + r.del_share + r.ins_share == doctest::Approx(100.0).epsilon(1e-12));
  const auto clean = ReportFromCounts("m", std::nullopt, 1, 5, 0, 0, 0);
  CHECK(clean.wer == 0.0);
  CHECK(clean.sub_share + clean.del_share + clean.ins_share == 0.0);
  CHECK(ErrorOf([] { ReportFromCounts("m", std::nullopt, 1, 0, 0, 0, 1); }) ==
        ErrorKind::EmptyReference);
}

TEST_CASE("score pools per model and cohort") {
  std::vector<ScoreRecord> recs = {
      {"u1", "m", Cohort::kControl, "one two three four five six seven eight nine ten",
       "one two three four five six seven eight nine ten eleven"},
  };
  auto reports = Score(recs);
  REQUIRE(reports.size() == 2);
  CHECK(!reports[0].cohort);
  CHECK(reports[1].cohort == Cohort::kControl);
  CHECK(FormatPercent(reports[0].wer) == "10.00");
  CHECK(FormatPercent(reports[0].ins_share) == "100.00");

  recs.push_back({"u2", "m", Cohort::kManifest, "a b", "a"});
  recs.push_back({"u3", "base", Cohort::kManifest, "a b c", "a b c"});
  recs.push_back({"u1", "base", Cohort::kControl, "x", "y"});
  reports = Score(recs);
  REQUIRE(reports.size() == 6);
  CHECK(reports[0].model == "base");
  CHECK(reports[3].model == "m");
  // Pooled, not averaged: 2 errors over 12 words.
  CHECK(reports[3].wer == doctest::Approx(100.0 * 2 / 12));
  CHECK(reports[3].n_utts == 2);
  CHECK(reports[5].cohort == Cohort::kManifest);

  const std::vector<ScoreRecord> empty_ref = {{"u", "m", Cohort::kControl, "", "x"}};
  CHECK(ErrorOf([&] { Score(empty_ref); }) == ErrorKind::EmptyReference);
}

TEST_CASE("score is independent of record order") {
  Rng rng(8);
  std::vector<ScoreRecord> recs;
  for (int i = 0; i < 300; ++i) {
    ScoreRecord r{"u" + std::to_string(i), i % 2 ? "m1" : "m2",
                  kAllCohorts[rng.Below(4)], "", ""};
    for (int w = 0; w < 1 + static_cast<int>(rng.Below(8)); ++w)
      r.reference += std::string(1, static_cast<char>('a' + rng.Below(3))) + " ";
    for (int w = 0; w < static_cast<int>(rng.Below(8)); ++w)
      r.hypothesis += std::string(1, static_cast<char>('a' + rng.Below(3))) + " ";
    recs.push_back(r);
  }
  const auto a = ReportsToCsv(Score(recs));
  rng.Shuffle(recs.begin(), recs.end());
  CHECK(ReportsToCsv(Score(recs)) == a);
}

TEST_CASE("deltas") {
  std::vector<ScoreReport> reports = {
      CohortReport("base", Cohort::kControl, 100, 100, 100),
      CohortReport("base", Cohort::kManifest, 200, 100, 200),
      CohortReport("var", Cohort::kControl, 90, 100, 100),
      CohortReport("var", Cohort::kManifest, 400, 159, 300),
  };
  CHECK(FormatPercent(reports[1].wer) == "5.00");
  CHECK(FormatPercent(reports[3].wer) == "8.59");
  const auto rows = DeltaReport(reports, "base", "var");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].cohort == Cohort::kManifest);
  CHECK(FormatDelta(rows[1].d_wer) == "+3.59");
  CHECK(FormatDelta(rows[0].d_wer) == "-0.10");
  for (const auto &r : rows)
    CHECK(r.d_wer == doctest::Approx(r.d_sub + r.d_del + r.d_ins).epsilon(1e-12));

  for (const auto &r : DeltaReport(reports, "base", "base")) {
    CHECK(r.d_wer == 0.0);
    CHECK(FormatDelta(r.d_sub) == "+0.00");
  }
  reports.pop_back();
  CHECK(ErrorOf([&] { DeltaReport(reports, "base", "var"); }) == ErrorKind::CohortMismatch);
  CHECK(ErrorOf([&] { DeltaReport(reports, "base", "nope"); }) == ErrorKind::CohortMismatch);
}

TEST_CASE("formatting") {
  CHECK(FormatPercent(-0.001) == "0.00");
  CHECK(FormatPercent(4.949999) == "4.95");
  CHECK(FormatDelta(-0.26) == "-0.26");
  CHECK(FormatDelta(-0.001) == "+0.00");
  const std::vector<ScoreReport> one = {ReportFromCounts("m", Cohort::kPreHd, 3, 200, 2, 1, 1)};
  const auto csv = ReportsToCsv(one);
  CHECK(csv.rfind("model,cohort,n_utts,n_ref,subs,dels,ins,wer,sub_rate,del_rate,ins_rate,"
                  "sub_share,del_share,ins_share\n", 0) == 0);
  CHECK(csv.find("m,pre_hd,3,200,2,1,1,2.00,1.00,0.50,0.50,50.00,25.00,25.00") !=
        std::string::npos);
  const auto js = nlohmann::json::parse(ReportsToJson(one));
  CHECK(js[0]["wer"] == "2.00");
  CHECK(js[0]["cohort"] == "pre_hd");
}

TEST_CASE("hypotheses parsing") {
  std::istringstream ok(R"({"utt_id":"u1","model":"a","hypothesis":"x y"})"
                        "\n"
                        R"({"utt_id":"u1","model":"b","hypothesis":""})"
                        "\n");
  const auto h = ParseHypotheses(ok);
  REQUIRE(h.size() == 2);
  CHECK(h[1].model == "b");
  std::istringstream dup(R"({"utt_id":"u1","model":"a","hypothesis":"x"})"
                         "\n"
                         R"({"utt_id":"u1","model":"a","hypothesis":"y"})");
  CHECK(ErrorOf([&] { ParseHypotheses(dup); }) == ErrorKind::DuplicateUttId);
  std::istringstream bad("\n{\"utt_id\":1}\n");
  try {
    ParseHypotheses(bad);
    FAIL("expected ParseError");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

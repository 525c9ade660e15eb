// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "../support/fixtures.hpp"
#include "../support/process.hpp"
#include "spre/ingest.hpp"
#include "spre/synthetic.hpp"

using namespace spre;
using spre::testing::box;
using spre::testing::quote;
using spre::testing::run;
using spre::testing::RunResult;
using spre::testing::ScratchDir;
namespace corpus = spre::testing::corpus;

namespace {

const std::string kCli = SPRE_CLI_PATH;

RunResult spre_cli(const std::string& args) { return run(quote(kCli) + " " + args); }

// Pedestrian on a bicycle for frames 1..3 only.
std::string overlap_run() {
  const spre::testing::Thing ped{{"pedestrian"}, box(0, 0, 5, 5)};
  const spre::testing::Thing bike{{"bicycle"}, box(3, 3, 8, 8)};
  const spre::testing::Thing far_bike{{"bicycle"}, box(50, 50, 60, 60)};
  return spre::testing::to_jsonl(
      spre::testing::stream_of({{ped, far_bike}, {ped, bike}, {ped, bike}, {ped, bike}, {far_bike}}));
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, MatchPrintsHalfOpenRanges) {
  ScratchDir dir;
  auto in = dir.write("s.jsonl", overlap_run());
  RunResult r = spre_cli(quote(corpus::kA1) + " " + quote(in.string()));
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "1:4\n");
}

TEST(Cli, NoMatchExitsOne) {
  ScratchDir dir;
  auto in = dir.write("s.jsonl", overlap_run());
  RunResult r = spre_cli(quote("[[:dragon:]]") + " " + quote(in.string()));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.out, "");
}

TEST(Cli, ErrorsExitTwo) {
  ScratchDir dir;
  auto in = dir.write("s.jsonl", overlap_run());
  auto bad = dir.write("bad.jsonl", "{\"channels\": 3}\n");
  RunResult syntax = spre_cli(quote("[[:car:]") + " " + quote(in.string()));
  EXPECT_EQ(syntax.exit_code, 2);
  EXPECT_NE(syntax.err.find("offset"), std::string::npos) << syntax.err;
  EXPECT_EQ(spre_cli(quote("[[:car:]]") + " " + quote((dir.path() / "missing").string())).exit_code, 2);
  RunResult schema = spre_cli(quote("[[:car:]]") + " " + quote(bad.string()));
  EXPECT_EQ(schema.exit_code, 2);
  EXPECT_NE(schema.err.find("line 1"), std::string::npos) << schema.err;
  EXPECT_EQ(spre_cli("--no-such-flag x").exit_code, 2);
  EXPECT_EQ(spre_cli("--format yaml x -").exit_code, 2);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(spre_cli("--help").exit_code, 0); }

TEST(Cli, JsonFormat) {
  ScratchDir dir;
  auto in = dir.write("s.jsonl", overlap_run());
  RunResult r = spre_cli("--format json " + quote(corpus::kA1) + " " + quote(in.string()));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto j = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(j.begin().key(), "start");
  EXPECT_EQ(j["start"], 1);
  EXPECT_EQ(j["end"], 4);
  EXPECT_EQ(j["frames"], 3);
  EXPECT_EQ(j["channel"], "cam");
  EXPECT_DOUBLE_EQ(j["t_start"].get<double>(), 0.1);
  EXPECT_DOUBLE_EQ(j["t_end"].get<double>(), 0.3);
}

TEST(Cli, CountEqualsLineCount) {
  ScratchDir dir;
  GeneratorConfig g;
  g.frames = 300;
  std::ostringstream s;
  write_stream(s, generate_stream(g));
  auto in = dir.write("s.jsonl", s.str());
  for (const char* q : {"[[:car:]]", "[[:car:]]*", "[<nonempty>([:car:] & [:truck:])]", "[[:bus:]] [[:sign:]]"}) {
    RunResult plain = spre_cli(quote(q) + " " + quote(in.string()));
    RunResult count = spre_cli("--count " + quote(q) + " " + quote(in.string()));
    EXPECT_EQ(count.out, std::to_string(lines(plain.out)) + "\n") << q;
    EXPECT_EQ(count.exit_code, plain.exit_code);
  }
}

TEST(Cli, MultipleInputsArePrefixedInOrder) {
  ScratchDir dir;
  auto a = dir.write("a.jsonl", overlap_run());
  auto b = dir.write("b.jsonl", overlap_run());
  const std::string args = quote("[[:pedestrian:]]{2}") + " " + quote(a.string()) + " " + quote(b.string());
  RunResult serial = spre_cli(args);
  RunResult parallel = spre_cli("--jobs 2 " + args);
  EXPECT_EQ(serial.out, a.string() + ":0:2\n" + a.string() + ":2:4\n" + b.string() + ":0:2\n" + b.string() + ":2:4\n");
  EXPECT_EQ(parallel.out, serial.out);
}

TEST(Cli, StandardInput) {
  ScratchDir dir;
  auto in = dir.write("s.jsonl", overlap_run());
  RunResult r = run("cat " + quote(in.string()) + " | " + quote(kCli) + " " + quote("[[:bicycle:]]") + " -");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(lines(r.out), 5u);
}

TEST(Cli, OnlineMode) {
  ScratchDir dir;
  auto in = dir.write("s.jsonl", overlap_run());
  RunResult r = spre_cli("--online " + quote("[<nonempty>([:pedestrian:] & [:bicycle:])]{1,3}") + " " +
                         quote(in.string()));
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "1:2\n1:3\n1:4\n");
  RunResult unbounded = spre_cli("--online " + quote(corpus::kA1) + " " + quote(in.string()));
  EXPECT_EQ(unbounded.exit_code, 2);
  EXPECT_NE(unbounded.err.find("window"), std::string::npos) << unbounded.err;
  RunResult windowed = spre_cli("--online --max-window 2 " + quote(corpus::kA1) + " " + quote(in.string()));
  EXPECT_EQ(windowed.out, "1:2\n1:3\n2:4\n");
}

TEST(Cli, RepairWarningAndStrictMode) {
  ScratchDir dir;
  auto in = dir.write("s.jsonl", overlap_run());
  RunResult lenient = spre_cli(quote(corpus::kB1) + " " + quote(in.string()));
  EXPECT_EQ(lenient.exit_code, 1);
  EXPECT_NE(lenient.err.find("warning: query repaired at offset 27"), std::string::npos) << lenient.err;
  EXPECT_EQ(spre_cli("--strict " + quote(corpus::kB1) + " " + quote(in.string())).exit_code, 2);
}

TEST(Cli, MisalignedFrames) {
  ScratchDir dir;
  const std::string good = spre::testing::to_jsonl(spre::testing::stream_of({{{{"car"}, box(0, 0, 1, 1)}}}));
  const std::string bad =
      R"({"channels":[{"name":"a","timestamp":0,"bounds":[[0,0],[1,1]],"objects":[{"class":"car","bbox":[[0,0],[1,1]]}]},)"
      R"({"name":"b","timestamp":0.01,"bounds":[[0,0],[1,1]]}]})"
      "\n";
  auto in = dir.write("s.jsonl", bad + good);
  EXPECT_EQ(spre_cli(quote("[[:car:]]") + " " + quote(in.string())).exit_code, 2);
  RunResult dropped = spre_cli("--drop-misaligned " + quote("[[:car:]]") + " " + quote(in.string()));
  EXPECT_EQ(dropped.out, "0:1\n");
  RunResult loose = spre_cli("--epsilon 0.1 " + quote("[[:car:]]") + " " + quote(in.string()));
  EXPECT_EQ(loose.out, "0:1\n1:2\n");
}

TEST(Cli, ChannelFlag) {
  ScratchDir dir;
  auto in = dir.write("s.jsonl", overlap_run());
  EXPECT_EQ(spre_cli("--channel cam " + quote("[[:bicycle:]]") + " " + quote(in.string())).exit_code, 0);
  EXPECT_EQ(spre_cli("--channel lidar " + quote("[[:bicycle:]]") + " " + quote(in.string())).exit_code, 2);
}

TEST(Cli, DumpAutomaton) {
  ScratchDir dir;
  auto in = dir.write("s.jsonl", overlap_run());
  const auto dot = dir.path() / "m.dot";
  spre_cli("--dump-automaton " + quote(dot.string()) + " " + quote(corpus::kExample) + " " + quote(in.string()));
  std::ifstream f(dot);
  std::stringstream text;
  text << f.rdbuf();
  EXPECT_NE(text.str().find("digraph"), std::string::npos);
  EXPECT_NE(text.str().find("[[:car:] & [:bus:]]"), std::string::npos);
}

TEST(Cli, GeneratorIsSeededAndReadable) {
  ScratchDir dir;
  const auto out = dir.path() / "g.jsonl";
  RunResult a = spre_cli("gen --seed 9 --frames 50 --objects 3 --classes car,bus -o " + quote(out.string()));
  ASSERT_EQ(a.exit_code, 0) << a.err;
  RunResult b = spre_cli("gen --seed 9 --frames 50 --objects 3 --classes car,bus");
  std::ifstream f(out);
  std::stringstream text;
  text << f.rdbuf();
  EXPECT_EQ(text.str(), b.out);
  EXPECT_EQ(lines(b.out), 50u);
  std::istringstream in(b.out);
  PerceptionStream s = load_stream(in);
  EXPECT_EQ(s.size(), 50u);
  EXPECT_EQ(spre_cli("gen --seed 10 --frames 50 --objects 3 --classes car,bus").out == b.out, false);
}

TEST(Cli, Bench) {
  ScratchDir dir;
  auto in = dir.write("s.jsonl", overlap_run());
  RunResult r = spre_cli("bench --samples 3 --json " + quote(corpus::kA1) + " " + quote(in.string()));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["samples"], 3);
  EXPECT_EQ(j["matches"], 1);
  EXPECT_EQ(j["frames"], 5);
  EXPECT_LE(j["min_ms"].get<double>(), j["max_ms"].get<double>());
}

// Copyright (C) 2026 The spre authors
//
// SPDX-License-Identifier: Apache-2.0
//

// grep-style frontend: spre QUERY INPUT... prints the frame ranges that match.
// Exit status is 0 when something matched, 1 when nothing did, 2 on error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "spre/automaton.hpp"
#include "spre/ingest.hpp"
#include "spre/matcher.hpp"
#include "spre/synthetic.hpp"

namespace {

constexpr int kMatched = 0;
constexpr int kNoMatch = 1;
constexpr int kFailure = 2;

struct MatchArgs {
  std::string query;
  std::vector<std::string> inputs;
  bool online = false;
  std::optional<std::size_t> max_window;
  std::string channel;
  std::string format = "text";
  double epsilon = 0.001;
  bool drop_misaligned = false;
  bool count = false;
  std::string dump_automaton;
  std::size_t jobs = 1;
  bool strict = false;
};

void warn(const std::string& message) { std::cerr << "spre: warning: " << message << '\n'; }

// Opens a file argument; "-" is standard input.
class Input {
public:
  explicit Input(const std::string& path) {
    if (path == "-") {
      stream_ = &std::cin;
      return;
    }
    file_.open(path);
    if (!file_) throw spre::ConfigError("cannot open '" + path + "'");
    stream_ = &file_;
  }
  std::istream& stream() { return *stream_; }

private:
  std::ifstream file_;
  std::istream* stream_ = nullptr;
};

spre::IngestConfig ingest_config(const MatchArgs& args) {
  spre::IngestConfig config;
  config.keyframe_threshold = args.epsilon;
  config.drop_misaligned = args.drop_misaligned;
  return config;
}

std::string format_match(const MatchArgs& args, const std::string& prefix, const spre::MatchReport& r) {
  if (args.format == "json") {
    nlohmann::ordered_json j;
    if (!prefix.empty()) j["file"] = prefix;
    j["start"] = r.range.start;
    j["end"] = r.range.end;
    j["frames"] = r.range.length();
    j["channel"] = r.channel;
    j["t_start"] = r.t_start;
    j["t_end"] = r.t_last;
    return j.dump();
  }
  std::string line = prefix.empty() ? std::string() : prefix + ":";
  return line + std::to_string(r.range.start) + ":" + std::to_string(r.range.end);
}

std::string format_count(const std::string& prefix, std::size_t n) {
  return (prefix.empty() ? std::string() : prefix + ":") + std::to_string(n);
}

struct FileResult {
  std::string output;
  std::size_t matches = 0;
  std::string error;
  std::vector<std::string> warnings;
};

FileResult run_offline(const MatchArgs& args, const spre::CompiledQuery& query, const std::string& path,
                       const std::string& prefix) {
  FileResult result;
  try {
    Input input(path);
    auto stream = spre::load_stream(input.stream(), ingest_config(args),
                                    [&](const std::string& w) { result.warnings.push_back(path + ": " + w); });
    auto ranges = spre::match_offline(stream, query, args.channel);
    result.matches = ranges.size();
    std::ostringstream out;
    if (args.count) {
      out << format_count(prefix, ranges.size()) << '\n';
    } else {
      for (const auto& range : ranges) {
        out << format_match(args, prefix, spre::make_report(stream, range, args.channel, query.text)) << '\n';
      }
    }
    result.output = out.str();
  } catch (const spre::Error& e) {
    result.error = path + ": " + e.what();
  }
  return result;
}

int match_offline(const MatchArgs& args, const spre::CompiledQuery& query) {
  const bool prefixed = args.inputs.size() > 1;
  std::vector<FileResult> results(args.inputs.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(args.jobs, args.inputs.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < args.inputs.size(); i = next++) {
      results[i] = run_offline(args, query, args.inputs[i], prefixed ? args.inputs[i] : std::string());
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::size_t total = 0;
  bool failed = false;
  for (const auto& r : results) {
    for (const auto& w : r.warnings) warn(w);
    std::cout << r.output;
    if (!r.error.empty()) {
      std::cerr << "spre: error: " << r.error << '\n';
      failed = true;
    }
    total += r.matches;
  }
  std::cout.flush();
  if (failed) return kFailure;
  return total > 0 ? kMatched : kNoMatch;
}

int match_online(const MatchArgs& args, const spre::CompiledQuery& query) {
  const bool prefixed = args.inputs.size() > 1;
  std::size_t total = 0;
  for (const auto& path : args.inputs) {
    const std::string prefix = prefixed ? path : std::string();
    Input input(path);
    spre::StreamReader reader(input.stream(), ingest_config(args), [&](const std::string& w) { warn(path + ": " + w); });
    spre::OnlineSession session(query, args.max_window, args.channel);
    std::size_t count = 0;
    while (auto frame = reader.next()) {
      auto range = session.push(*frame);
      if (!range) continue;
      ++count;
      if (args.count) continue;
      spre::MatchReport report;
      report.range = *range;
      report.channel = spre::select_channel(*frame, args.channel).info.name;
      report.t_start = session.timestamp(range->start);
      report.t_last = session.timestamp(range->end - 1);
      report.query = query.text;
      std::cout << format_match(args, prefix, report) << std::endl;
    }
    if (args.count) std::cout << format_count(prefix, count) << std::endl;
    total += count;
  }
  return total > 0 ? kMatched : kNoMatch;
}

int run_match(const MatchArgs& args) {
  spre::CompileOptions options;
  spre::ParseOptions parse_options;
  parse_options.strict = args.strict;
  auto query = spre::compile_query(args.query, options, args.online, parse_options);
  for (const auto& w : query.warnings) {
    warn("query repaired at offset " + std::to_string(w.span.begin) + ": " + w.message);
  }
  if (!args.dump_automaton.empty()) {
    std::ofstream dot(args.dump_automaton);
    if (!dot) throw spre::ConfigError("cannot write '" + args.dump_automaton + "'");
    dot << query.forward.to_dot(&query.symbols);
  }
  if (args.online) {
    // Fail on an unbounded horizon before reading any input.
    spre::OnlineSession probe(query, args.max_window, args.channel);
    return match_online(args, query);
  }
  return match_offline(args, query);
}

int run_gen(const spre::GeneratorConfig& config, const std::string& output) {
  auto stream = spre::generate_stream(config);
  if (output.empty() || output == "-") {
    spre::write_stream(std::cout, stream);
    std::cout.flush();
  } else {
    std::ofstream out(output);
    if (!out) throw spre::ConfigError("cannot write '" + output + "'");
    spre::write_stream(out, stream);
  }
  return 0;
}

int run_bench(const MatchArgs& args, std::size_t samples, bool json) {
  if (samples == 0) throw spre::ConfigError("--samples must be positive");
  auto query = spre::compile_query(args.query);
  Input input(args.inputs.front());
  auto stream = spre::load_stream(input.stream(), ingest_config(args));

  std::vector<double> seconds;
  std::size_t matches = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    auto t0 = std::chrono::steady_clock::now();
    matches = spre::match_offline(stream, query, args.channel).size();
    auto t1 = std::chrono::steady_clock::now();
    seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
  }
  double sum = 0.0;
  for (double s : seconds) sum += s;
  const double mean = sum / static_cast<double>(samples);
  const double lo = *std::min_element(seconds.begin(), seconds.end());
  const double hi = *std::max_element(seconds.begin(), seconds.end());
  const double fps = mean > 0.0 ? static_cast<double>(stream.size()) / mean : 0.0;

  if (json) {
    nlohmann::ordered_json j;
    j["frames"] = stream.size();
    j["samples"] = samples;
    j["matches"] = matches;
    j["mean_ms"] = mean * 1e3;
    j["min_ms"] = lo * 1e3;
    j["max_ms"] = hi * 1e3;
    j["frames_per_second"] = fps;
    std::cout << j.dump() << '\n';
  } else {
    std::printf("frames    %zu\nsamples   %zu\nmatches   %zu\nmean      %.3f ms\nmin       %.3f ms\n"
                "max       %.3f ms\nthroughput %.0f frames/s\n",
                stream.size(), samples, matches, mean * 1e3, lo * 1e3, hi * 1e3, fps);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search perception streams with spatial regular expressions."};
  app.require_subcommand(0, 1);

  MatchArgs args;
  app.add_option("query", args.query, "Query to search for");
  app.add_option("inputs", args.inputs, "Stream files; '-' reads standard input");
  app.add_flag("--online", args.online, "Report the longest match ending at every frame");
  app.add_option("--max-window", args.max_window, "Frames kept by online matching")->check(CLI::PositiveNumber);
  app.add_option("--channel", args.channel, "Channel to evaluate (default: first)");
  app.add_option("--format", args.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--epsilon", args.epsilon, "Key-frame timestamp tolerance, seconds")->check(CLI::NonNegativeNumber);
  app.add_flag("--drop-misaligned", args.drop_misaligned, "Skip frames whose channels are not aligned");
  app.add_flag("--count", args.count, "Print only the number of matches");
  app.add_option("--dump-automaton", args.dump_automaton, "Write the automaton as a Graphviz file");
  app.add_option("--jobs", args.jobs, "Input files processed in parallel")->check(CLI::PositiveNumber);
  app.add_flag("--strict", args.strict, "Reject queries that need repair");

  spre::GeneratorConfig gen;
  std::string gen_output;
  std::string gen_classes;
  auto* gen_cmd = app.add_subcommand("gen", "Write a synthetic stream");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--frames", gen.frames, "Number of frames");
  gen_cmd->add_option("--objects", gen.objects_per_frame, "Objects per frame");
  gen_cmd->add_option("--classes", gen_classes, "Comma-separated class vocabulary");
  gen_cmd->add_option("--overlap", gen.overlap_probability, "Chance of overlapping the previous object")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--channel", gen.channel, "Channel name");
  gen_cmd->add_option("-o,--output", gen_output, "Output file (default: standard output)");

  MatchArgs bench_args;
  std::size_t samples = 10;
  bool bench_json = false;
  auto* bench_cmd = app.add_subcommand("bench", "Time offline matching");
  bench_cmd->add_option("query", bench_args.query, "Query")->required();
  bench_cmd->add_option("input", bench_args.inputs, "Stream file")->required()->expected(1);
  bench_cmd->add_option("--samples", samples, "Number of timed runs");
  bench_cmd->add_option("--channel", bench_args.channel, "Channel to evaluate");
  bench_cmd->add_option("--epsilon", bench_args.epsilon, "Key-frame timestamp tolerance, seconds");
  bench_cmd->add_flag("--json", bench_json, "Emit one JSON object");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kFailure;
  }

  try {
    if (*gen_cmd) {
      if (!gen_classes.empty()) {
        gen.classes.clear();
        std::stringstream ss(gen_classes);
        for (std::string c; std::getline(ss, c, ',');) {
          if (!c.empty()) gen.classes.push_back(c);
        }
      }
      return run_gen(gen, gen_output);
    }
    if (*bench_cmd) return run_bench(bench_args, samples, bench_json);

    if (args.query.empty()) {
      std::cerr << "spre: error: missing QUERY\n" << app.help();
      return kFailure;
    }
    if (args.inputs.empty()) args.inputs.push_back("-");
    return run_match(args);
  } catch (const spre::Error& e) {
    std::cerr << "spre: error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "spre: error: " << e.what() << '\n';
    return kFailure;
  }
}

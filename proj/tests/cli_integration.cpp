//
//   Copyright 2026 the corelab authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//

// Command-level checks: exit codes, atomic outputs, determinism.
// Usage: cli_integration <cli-binary> <data-dir>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::string g_cli;
fs::path g_data;
fs::path g_work;

void check(bool ok, const std::string& name) {
  std::cout << (ok ? "ok" : "FAIL") << " - " << name << std::endl;
  if (!ok) ++g_failures;
}

std::string q(const std::string& s) { return "'" + s + "'"; }

int run(const std::string& args) {
  std::string cmd = q(g_cli) + " " + args + " >/dev/null 2>/dev/null";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

void write_file(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: cli_integration <cli-binary> <data-dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_data = argv[2];
  g_work = fs::temp_directory_path() / "corelab_cli_integration";
  fs::remove_all(g_work);
  fs::create_directories(g_work);

  const std::string registry = (g_data / "registry.json").string();
  const std::string corpus = (g_data / "corpus" / "synthetic_200.jsonl").string();
  const std::string config = "--config " + q(registry) + " ";

  // usage errors
  check(run("definitely-not-a-command") == 64, "unknown subcommand exits 64");
  check(run(config + "curate bogus_task --input x --output y --language sw") == 64,
        "unknown curation task exits 64");
  check(run("metrics --input only") == 64, "missing required options exit 64");

  // metrics over the bundled corpus: one line per trace
  fs::path m = g_work / "metrics.jsonl";
  fs::path s = g_work / "summary.tsv";
  check(run(config + "--workers 1 metrics --input " + q(corpus) + " --output " +
            q(m.string()) + " --summary " + q(s.string()) +
            " --group-by language") == 0,
        "metrics over the bundled corpus succeeds");
  check(line_count(m) == 200, "one metrics line per trace");
  check(line_count(s) == 6, "one summary row per language plus header");

  // identical output independent of worker count
  fs::path m4 = g_work / "metrics4.jsonl";
  run(config + "--workers 4 metrics --input " + q(corpus) + " --output " +
      q(m4.string()));
  check(slurp(m) == slurp(m4), "metrics output independent of worker count");

  // corrupt corpus: exit 1 and no partial output left behind
  fs::path corrupt = g_work / "corrupt.jsonl";
  write_file(corrupt, slurp(corpus).substr(0, 400) + "\n{not json\n");
  fs::path mc = g_work / "metrics_corrupt.jsonl";
  check(run(config + "metrics --input " + q(corrupt.string()) + " --output " +
            q(mc.string())) == 1,
        "corrupt corpus line exits 1");
  check(!fs::exists(mc), "no output file left after a data error");

  // missing registry is a configuration error
  check(run("--config /nonexistent/registry.json metrics --input " + q(corpus) +
            " --output " + q((g_work / "x.jsonl").string())) == 2,
        "missing registry exits 2");

  // report: single-group row, normalized columns, disjoint-id failure
  fs::path rep = g_work / "report.tsv";
  check(run("report --metrics " + q(m.string()) + " --corpus " + q(corpus) +
            " --output " + q(rep.string()) + " --group-by dataset") == 0,
        "report with one group succeeds");
  check(line_count(rep) == 2, "single group yields one data row");
  {
    std::ifstream in(rep);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    std::istringstream cells(row);
    std::string cell;
    bool in_range = true;
    int col = 0;
    while (std::getline(cells, cell, '\t')) {
      if (col >= 2 && cell != "NA") {  // key and n come first
        double v = std::stod(cell);
        if (v < 0.0 || v > 1.0) in_range = false;
      }
      ++col;
    }
    check(in_range, "normalized report columns stay within [0,1]");
  }
  fs::path other_metrics = g_work / "other_metrics.jsonl";
  write_file(other_metrics,
             "{\"id\":\"unmatched\",\"n_tokens\":1,\"n_independent\":0,"
             "\"language_counts\":{\"en\":1},\"cmi\":0.0,\"m_index\":0.0,"
             "\"i_index\":0.0,\"burstiness\":null,\"memory\":null,"
             "\"matrix_language\":\"en\",\"matrix_class\":\"English\","
             "\"fluency\":null,\"accuracy\":null}\n");
  check(run("report --metrics " + q(other_metrics.string()) + " --corpus " +
            q(corpus) + " --output " + q((g_work / "nojoin.tsv").string())) == 1,
        "disjoint ids exit 1");

  // ratings attach into the metrics output
  fs::path ratings = g_work / "ratings.jsonl";
  write_file(ratings,
             "{\"trace_id\":\"trace-0000\",\"dimension\":\"accuracy\","
             "\"score\":3,\"rater\":\"offline\"}\n");
  fs::path mr = g_work / "metrics_rated.jsonl";
  run(config + "metrics --input " + q(corpus) + " --output " + q(mr.string()) +
      " --ratings " + q(ratings.string()));
  {
    std::ifstream in(mr);
    std::string first;
    std::getline(in, first);
    check(first.find("\"accuracy\":3") != std::string::npos,
          "offline rating lands in the metrics output");
  }

  // curate: determinism, budget zero, template requirement
  fs::path aligned = g_work / "aligned.jsonl";
  {
    std::ostringstream body;
    for (int i = 0; i < 12; ++i) {
      body << "{\"prompt\":\"swali " << i
           << "\",\"reasoning_en\":\"step one\\nstep two\\nstep three\\nstep four\","
              "\"reasoning_l\":\"hatua moja\\nhatua mbili\\nhatua tatu\\nhatua nne\","
              "\"answer\":\"(A)\"}\n";
    }
    write_file(aligned, body.str());
  }
  fs::path d1 = g_work / "ds1.jsonl";
  fs::path d2 = g_work / "ds2.jsonl";
  fs::path p1 = g_work / "plan1.json";
  fs::path p2 = g_work / "plan2.json";
  std::string curate_base = "--seed 7 curate synthetic_csw --input " +
                            q(aligned.string()) + " --language sw ";
  check(run(curate_base + "--output " + q(d1.string()) + " --plan " +
            q(p1.string())) == 0,
        "synthetic_csw curation succeeds");
  run(curate_base + "--output " + q(d2.string()) + " --plan " + q(p2.string()));
  check(slurp(d1) == slurp(d2) && slurp(p1) == slurp(p2),
        "fixed seed reruns are byte-identical");
  check(slurp(p1).find("mt19937_64/fisher-yates/v1") != std::string::npos,
        "plan records the splice algorithm id");

  fs::path d0 = g_work / "ds0.jsonl";
  fs::path p0 = g_work / "plan0.json";
  run(curate_base + "--budget 0 --output " + q(d0.string()) + " --plan " +
      q(p0.string()));
  check(fs::exists(d0) && line_count(d0) == 0, "budget 0 selects nothing");
  check(slurp(p0).find("\"n_selected\": 0") != std::string::npos,
        "budget 0 plan is empty");

  fs::path pairs = g_work / "pairs.jsonl";
  write_file(pairs, "{\"source\":\"Habari\",\"target\":\"Hello\"}\n");
  check(run("curate mt_en --input " + q(pairs.string()) + " --output " +
            q((g_work / "mt.jsonl").string()) + " --language sw") == 2,
        "mt_en without a template exits 2");
  check(run("curate mt_en --input " + q(pairs.string()) + " --output " +
            q((g_work / "mt.jsonl").string()) + " --language sw --template " +
            q((g_data / "templates" / "translate_to_english.txt").string())) == 0,
        "mt_en with the bundled template succeeds");

  // native curation over the bundled corpus (gold answers present)
  fs::path nat = g_work / "native.jsonl";
  fs::path natplan = g_work / "native_plan.json";
  check(run("curate native --input " + q(corpus) + " --language sw --output " +
            q(nat.string()) + " --plan " + q(natplan.string()) +
            " --percentile 0.95") == 0,
        "native curation succeeds");
  check(line_count(nat) > 0, "native curation keeps correct traces");
  check(slurp(natplan).find("length_cutoff") != std::string::npos,
        "native plan records the length cutoff");

  // strategic selection keeps only code-switched traces
  fs::path strat = g_work / "strategic.jsonl";
  check(run(config + "curate strategic_csw --input " + q(corpus) +
            " --language sw --output " + q(strat.string())) == 0,
        "strategic curation succeeds");
  std::size_t kept = line_count(strat);
  check(kept > 0 && kept < 200, "strategic selection filters the corpus");

  // extra corpus fields as continuous predictors in fit
  fs::path extra_corpus = g_work / "extra_corpus.jsonl";
  {
    std::ostringstream body;
    std::istringstream in(slurp(corpus));
    std::string line;
    int i = 0;
    while (std::getline(in, line)) {
      body << line.substr(0, line.size() - 1) << ",\"n_train\":" << (i % 7) * 100
           << "}\n";
      ++i;
    }
    write_file(extra_corpus, body.str());
  }
  fs::path mfit = g_work / "metrics_extra.jsonl";
  run(config + "metrics --input " + q(extra_corpus.string()) + " --output " +
      q(mfit.string()));
  fs::path fitj = g_work / "fit_extra.json";
  check(run("fit --metrics " + q(mfit.string()) + " --corpus " +
            q(extra_corpus.string()) + " --output " + q(fitj.string()) +
            " --continuous cmi,extra:n_train --factors matrix_class") == 0,
        "fit with an extra-field predictor succeeds");
  check(slurp(fitj).find("extra:n_train") != std::string::npos,
        "extra-field predictor appears in the fit output");

  // --rate pulls missing ratings from the endpoint in CORELAB_RATER_URL
  {
    httplib::Server server;
    server.Post("/rate", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("2", "text/plain");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    fs::path small = g_work / "small.jsonl";
    {
      std::istringstream in(slurp(corpus));
      std::string line, body;
      for (int i = 0; i < 3 && std::getline(in, line); ++i) body += line + "\n";
      write_file(small, body);
    }
    fs::path rated = g_work / "metrics_online.jsonl";
    std::string url = "http://127.0.0.1:" + std::to_string(port) + "/rate";
    setenv("CORELAB_RATER_URL", url.c_str(), 1);
    check(run(config + "metrics --input " + q(small.string()) + " --output " +
              q(rated.string()) + " --rate") == 0,
          "metrics --rate succeeds against a live endpoint");
    std::string out = slurp(rated);
    check(out.find("\"fluency\":2") != std::string::npos &&
              out.find("\"accuracy\":2") != std::string::npos,
          "online ratings land in the metrics output");
    unsetenv("CORELAB_RATER_URL");
    check(run(config + "metrics --input " + q(small.string()) + " --output " +
              q((g_work / "norate.jsonl").string()) + " --rate") == 2,
          "--rate without the endpoint variable exits 2");

    server.stop();
    server_thread.join();
  }

  // tokenize/lid/validate-lid single-purpose commands
  check(run(config + "tokenize --text 'ni 42 sawa' --output " +
            q((g_work / "tok.jsonl").string())) == 0,
        "tokenize --text works");
  check(run(config + "lid --input " + q(corpus) + " --output " +
            q((g_work / "lid.jsonl").string())) == 0,
        "lid command works");
  check(run(config + "validate-lid --gold " +
            q((g_data / "gold" / "lid_gold.jsonl").string()) + " --output " +
            q((g_work / "lidreport.json").string())) == 0,
        "validate-lid writes a report");
  check(slurp(g_work / "lidreport.json").find("\"accuracy\"") != std::string::npos,
        "lid report carries an accuracy field");

  if (g_failures > 0) {
    std::cout << g_failures << " integration check(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all integration checks passed" << std::endl;
  return 0;
}

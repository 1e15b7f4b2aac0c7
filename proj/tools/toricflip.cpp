#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "toricflip/cli.hpp"
#include "toricflip/error.hpp"

namespace {

void add_job_options(CLI::App* sub, toricflip::JobSpec& job) {
  sub->add_option("--family", job.family, "germ family: xyz_t, xy_t, xy_f_zr_t, gorenstein_gt, smooth, moderate_binomial");
  sub->add_option("--r", job.r, "group order r");
  sub->add_option("--a", job.a, "weight a of x in 1/r(a, r-a, 1, 0)");
  sub->add_option("--n", job.n, "t-exponent n; for reduce and scan a comma-separated list")->delimiter(',');
  sub->add_option("--d", job.d, "base change degree (reduce)");
  sub->add_option("--file", job.file, "germ descriptor JSON file");
  sub->add_option("--format", job.format, "json, dot or table")->check(CLI::IsMember({"json", "dot", "table"}));
  sub->add_option("--max-r", job.max_r, "largest r for scan");
  sub->add_option("--out", job.out, "write output to PATH instead of stdout");
  sub->add_option("--workers", job.workers, "scan threads (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toricflip: moderate degenerations, weighted blow-ups and semistable reduction"};
  app.require_subcommand(0, 1);
  std::string job_file;
  app.add_option("--job", job_file, "run a JSON job file");

  toricflip::JobSpec job;
  const std::vector<std::pair<const char*, const char*>> commands{
      {"classify", "classify a germ"},
      {"blowup", "one canonical weighted blow-up"},
      {"resolve", "full resolution tree"},
      {"reduce", "semistable reduction plan"},
      {"hj", "Hirzebruch-Jung chain of 1/r(1, a)"},
      {"scan", "resolve every coprime (r, a) up to --max-r"}};
  for (const auto& [name, help] : commands) add_job_options(app.add_subcommand(name, help), job);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!job_file.empty()) {
    try {
      std::ifstream in(job_file);
      if (!in) throw toricflip::InvalidInput("cannot open job file '" + job_file + "'");
      job = toricflip::job_from_json(toricflip::Json::parse(in));
    } catch (const std::exception& e) {
      std::cerr << toricflip::Json({{"error", "invalid_input"}, {"message", e.what()}}).dump() << "\n";
      return 2;
    }
  } else {
    auto subs = app.get_subcommands();
    if (subs.empty()) {
      std::cerr << app.help();
      return 2;
    }
    job.command = subs.front()->get_name();
  }
  return toricflip::run(job, std::cout, std::cerr);
}

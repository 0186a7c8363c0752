// circount count [--positive] [--torus] [--affine] [--verify] [--explain] [--jobs N] [FILE|-]

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <iterator>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "circount/cli.hpp"
#include "circount/errors.hpp"

namespace {

using namespace circount;

int count_command(const std::string& input, const cli::RunOptions& opts, unsigned jobs) {
  std::string text;
  if (input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "circount: cannot open " << input << "\n";
      return cli::kInvalidInput;
    }
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  std::vector<cli::BatchItem> items = cli::parse_batch(text);
  if (items.empty()) {
    std::cerr << "circount: no documents in input\n";
    return cli::kInvalidInput;
  }

  std::vector<std::optional<cli::Report>> reports(items.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < items.size();) {
      cli::Report r = items[k].doc ? cli::run(*items[k].doc, opts, k) : cli::error_report(items[k], k);
      std::lock_guard lock(mu);
      reports[k] = std::move(r);
      ready.notify_all();
    }
  };
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(items.size()));
  std::vector<std::jthread> pool;
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);

  int exit_code = 0;
  for (std::size_t k = 0; k < items.size(); ++k) {
    std::unique_lock lock(mu);
    ready.wait(lock, [&] { return reports[k].has_value(); });
    const cli::Report& r = *reports[k];
    std::cout << r.body.dump() << "\n" << std::flush;
    std::cerr << r.summary << "\n";
    exit_code = std::max(exit_code, r.exit_code);
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Count real roots of circuit polynomial systems"};
  app.require_subcommand(1);
  CLI::App* count = app.add_subcommand("count", "Count roots of each system in the input");
  cli::RunOptions opts;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string input = "-";
  count->add_flag("--positive", opts.targets.positive, "Roots in the positive orthant");
  count->add_flag("--torus", opts.targets.torus, "Roots in the real torus (R*)^n");
  count->add_flag("--affine", opts.targets.affine, "Roots in R^n");
  count->add_flag("--verify", opts.verify, "Cross-check counts by sampling and, for n = 1, direct isolation");
  count->add_flag("--explain", opts.explain, "Include intermediate data in each report");
  count->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);
  count->add_option("--samples", opts.verify_samples, "Sample points per system for --verify")
      ->check(CLI::PositiveNumber);
  count->add_option("input", input, "JSON input file, or - for standard input");
  CLI11_PARSE(app, argc, argv);

  try {
    opts.precision_cap_bits = cli::precision_cap_from_env();
  } catch (const Error& e) {
    std::cerr << "circount: " << e.what() << "\n";
    return cli::kInvalidInput;
  }
  return count_command(input, opts, jobs);
}

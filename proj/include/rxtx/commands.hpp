#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rxtx/bench.hpp"
#include "rxtx/discovery.hpp"

namespace rxtx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verification failed or the command could not complete
inline constexpr int kExitUsage = 2;

struct VerifyOptions {
  std::optional<std::string> scheme_file;
  bool oracle = true;  // also run the small randomized equivalence suite
};

struct CountOptions {
  std::string algo = "rxtx";
  std::string metric = "mults";
  std::uint64_t n = 4;
  bool opt = false;
  bool explain = false;
};

struct TableOptions {
  int max_exp = 10;
  std::optional<std::string> out;
  bool with_opt = true;
};

struct BenchOptions {
  BenchConfig config;
  bool json_stdout = false;
};

struct DiscoverOptions {
  std::size_t dim = 2;
  std::size_t samples = 2000;
  std::uint64_t seed = 1;
  discovery::SampleMode mode = discovery::SampleMode::Exhaustive;
  discovery::FormSpace space = discovery::FormSpace::Free;
  std::optional<std::size_t> max_products;
  std::size_t max_relation_size = 2;
  double time_budget = 0;
  std::optional<std::string> out;
};

struct ExportOptions {
  std::string scheme = "rxtx";
  std::optional<std::string> out;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err);
int cmd_count(const CountOptions& o, std::ostream& out, std::ostream& err);
int cmd_table(const TableOptions& o, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err);
int cmd_discover(const DiscoverOptions& o, std::ostream& out, std::ostream& err);
int cmd_export(const ExportOptions& o, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rxtx::cli

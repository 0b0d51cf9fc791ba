#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace thirring::cli {

// Exit codes: 0 ok, 1 check failure, 2 usage / invalid parameters.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailure = 1;
inline constexpr int kUsage = 2;

struct BandsOptions {
  double mass = 0.7;
  std::vector<double> couplings;  // chi values for discrete curves
  int p_steps = 200;
  std::filesystem::path out;
};

struct BoundStateOptions {
  double mass = 0.6;
  double coupling = 0.2 * 3.141592653589793;
  double total_momentum = 0.035 * 3.141592653589793;
  int window = 128;
  std::filesystem::path out;
};

struct EvolveOptions {
  double mass = 0.6;
  double coupling = 0.0;
  std::string initial = "singlet";  // singlet | packet
  double total_momentum = 0.0;      // packet only
  double packet_width = 12.0;       // packet only
  int steps = 32;
  int size = 256;
  std::string boundary = "periodic";  // periodic | open
  int snapshot_every = 0;  // 0: initial and final only
  std::filesystem::path out;
};

struct ScatterOptions {
  double mass = 0.6;
  double coupling = 1.0;
  double total_momentum = 0.5;
  double relative_momentum = 0.9;
  int branch = +1;
  int window = 64;
  std::filesystem::path out;
};

struct DegeneracyOptions {
  double mass = 0.6;
  double total_momentum = 0.5235987755982988;
  double phase = 2.0;  // omega
  std::filesystem::path out;
};

struct VerifyOptions {
  std::string level = "quick";
  std::uint64_t seed = 12345;
  std::filesystem::path out;  // optional report directory
};

int cmd_bands(const BandsOptions& opt);
int cmd_boundstate(const BoundStateOptions& opt);
int cmd_evolve(const EvolveOptions& opt);
int cmd_scatter(const ScatterOptions& opt);
int cmd_degeneracy(const DegeneracyOptions& opt);
int cmd_verify(const VerifyOptions& opt);

/// Parses argv and dispatches to the subcommands.
int run(int argc, const char* const* argv);

}  // namespace thirring::cli

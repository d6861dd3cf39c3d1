#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "expsum/signal.hpp"

namespace expsum {

// Process exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitReproductionMiss = 1;
inline constexpr int kExitUsage = 2;

struct FitOptions {
    std::string signal = "sign";  // "sign" or "csv:PATH"
    int n = 1;
    int starts = 32;
    std::uint64_t seed = 0;
    std::string out_path;  // fit report destination; empty skips the file
};

struct PhiMapOptions {
    std::string signal = "sign";  // the map is defined for "sign" only
    std::string mode = "1";       // "1" (single frequency) or "2cluster"
    std::string u_range = "-1:1:21";   // MIN:MAX:STEPS
    std::string v_range = "-2:2:21";
    std::string out_path;  // CSV destination, header u,v,phi
};

struct ReproduceOptions {
    // Adds 1e-3 to every computed value before checking. Negative
    // control: a run with this set must exit with kExitReproductionMiss.
    bool inject_error = false;
};

// Fits `n` frequencies to the signal, writes a key/value report to
// out_path (unless empty), prints f_min on `out`. Returns kExitOk or
// kExitUsage.
int run_fit(const FitOptions& options, std::ostream& out, std::ostream& err);

// Tabulates phi over the requested frequency grid into a CSV file.
// Returns kExitOk or kExitUsage.
int run_phi_map(const PhiMapOptions& options, std::ostream& out,
                std::ostream& err);

// Recomputes the sign case-study reference values (stationary frequency
// v0, the one-frequency minimum at +/- i v0, the coincident-pair limit
// 1/4) and prints a comparison table plus the best two-frequency fit
// found. Returns kExitOk when every check passes, kExitReproductionMiss
// otherwise.
int run_reproduce(const ReproduceOptions& options, std::ostream& out,
                  std::ostream& err);

// "sign" -> the built-in sign signal; "csv:PATH" -> sampled signal read
// from PATH. Anything else throws std::invalid_argument.
Signal load_signal(const std::string& spec);

// CSV exchange format: header "x,f_re,f_im", one row per grid point.
// Parse errors carry 1-based line numbers. `name` labels the stream in
// error messages.
Signal read_signal_csv(std::istream& in, const std::string& name);
void write_signal_csv(std::ostream& out, const Signal& signal);

// Shortest round-trippable decimal form used for all numeric output.
std::string format_double(double x);

} // namespace expsum

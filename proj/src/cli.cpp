#include "expsum/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "expsum/errors.hpp"
#include "expsum/objective.hpp"
#include "expsum/optimizer.hpp"

namespace expsum {

namespace {

constexpr std::string_view kCsvHeader = "x,f_re,f_im";

double parse_field(std::string_view field, const std::string& where) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw MalformedSignal(where + ": cannot parse number '" +
                              std::string(field) + "'");
    }
    return value;
}

// Splits on commas; empty fields are kept so the count check catches them.
std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t begin = 0;
    while (true) {
        const std::size_t comma = line.find(',', begin);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(begin));
            return fields;
        }
        fields.push_back(line.substr(begin, comma - begin));
        begin = comma + 1;
    }
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    return line;
}

struct Range {
    double min = 0.0;
    double max = 0.0;
    int steps = 0;
};

Range parse_range(const std::string& text, const std::string& flag) {
    const auto bad = [&](const std::string& why) {
        return std::invalid_argument(flag + " expects MIN:MAX:STEPS, " + why);
    };
    const std::size_t c1 = text.find(':');
    const std::size_t c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
        throw bad("got '" + text + "'");
    }
    const std::string_view whole{text};
    const std::string_view min_part = whole.substr(0, c1);
    const std::string_view max_part = whole.substr(c1 + 1, c2 - c1 - 1);
    const std::string_view steps_part = whole.substr(c2 + 1);

    Range range;
    try {
        range.min = parse_field(min_part, flag);
        range.max = parse_field(max_part, flag);
    } catch (const MalformedSignal& e) {
        throw bad(e.what());
    }
    const char* first = steps_part.data();
    const char* last = steps_part.data() + steps_part.size();
    const auto [ptr, ec] = std::from_chars(first, last, range.steps);
    if (ec != std::errc{} || ptr != last) {
        throw bad("bad step count '" + std::string(steps_part) + "'");
    }
    if (range.steps < 1) {
        throw bad("step count must be at least 1");
    }
    if (!(range.min <= range.max)) {
        throw bad("range is inverted");
    }
    return range;
}

std::vector<double> range_points(const Range& range) {
    std::vector<double> points(std::size_t(range.steps));
    for (int i = 0; i < range.steps; ++i) {
        points[std::size_t(i)] =
            range.steps == 1
                ? range.min
                : range.min + (range.max - range.min) * double(i) /
                                  double(range.steps - 1);
    }
    return points;
}

void write_fit_report(std::ostream& out, const FitOptions& options,
                      const OptimizeResult& result) {
    out << "signal: " << options.signal << "\n";
    out << "n: " << options.n << "\n";
    out << "starts: " << options.starts << "\n";
    out << "seed: " << options.seed << "\n";
    out << "evaluations: " << result.evaluations << "\n";
    out << "f_min: " << format_double(result.best_phi) << "\n";
    out << "rms_deflection: " << format_double(std::sqrt(result.best_phi))
        << "\n";
    const std::vector<Complex>& lambdas = result.best_freqs.lambdas;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        out << "lambda[" << i << "].u: " << format_double(lambdas[i].real())
            << "\n";
        out << "lambda[" << i << "].v: " << format_double(lambdas[i].imag())
            << "\n";
    }
    const LinearFit& fit = result.fit;
    for (std::size_t i = 0; i < fit.basis.size(); ++i) {
        const ExpoPolyTerm& term = fit.basis.terms[i];
        out << "term[" << i << "].degree: " << term.degree << "\n";
        out << "term[" << i << "].u: " << format_double(term.lambda.real())
            << "\n";
        out << "term[" << i << "].v: " << format_double(term.lambda.imag())
            << "\n";
        out << "coefficient[" << i
            << "].re: " << format_double(fit.coefficients[i].real()) << "\n";
        out << "coefficient[" << i
            << "].im: " << format_double(fit.coefficients[i].imag()) << "\n";
    }
}

struct ReproduceRow {
    std::string quantity;
    double value = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    bool checked = true;
};

} // namespace

std::string format_double(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

Signal read_signal_csv(std::istream& in, const std::string& name) {
    std::string raw;
    if (!std::getline(in, raw)) {
        throw MalformedSignal(name + " line 1: missing header");
    }
    if (strip_cr(raw) != kCsvHeader) {
        throw MalformedSignal(name + " line 1: expected header '" +
                              std::string(kCsvHeader) + "'");
    }
    std::vector<double> grid;
    std::vector<Complex> values;
    long line_no = 1;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = strip_cr(raw);
        if (line.empty()) {
            continue;
        }
        const std::string where = name + " line " + std::to_string(line_no);
        const std::vector<std::string_view> fields = split_csv(line);
        if (fields.size() != 3) {
            throw MalformedSignal(where + ": expected 3 fields, got " +
                                  std::to_string(fields.size()));
        }
        grid.push_back(parse_field(fields[0], where));
        values.emplace_back(parse_field(fields[1], where),
                            parse_field(fields[2], where));
    }
    return Signal::sampled(std::move(grid), std::move(values));
}

void write_signal_csv(std::ostream& out, const Signal& signal) {
    if (signal.kind() != Signal::Kind::Sampled) {
        throw std::invalid_argument("only sampled signals serialize to CSV");
    }
    out << kCsvHeader << "\n";
    const std::vector<double>& grid = signal.grid();
    const std::vector<Complex>& values = signal.values();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << format_double(grid[i]) << ',' << format_double(values[i].real())
            << ',' << format_double(values[i].imag()) << "\n";
    }
}

Signal load_signal(const std::string& spec) {
    if (spec == "sign") {
        return Signal::sign();
    }
    if (spec.rfind("csv:", 0) == 0) {
        const std::string path = spec.substr(4);
        std::ifstream file(path);
        if (!file) {
            throw MalformedSignal("cannot open signal file '" + path + "'");
        }
        return read_signal_csv(file, path);
    }
    throw std::invalid_argument("unknown signal '" + spec +
                                "', expected sign or csv:PATH");
}

int run_fit(const FitOptions& options, std::ostream& out, std::ostream& err) {
    try {
        const Signal signal = load_signal(options.signal);
        OptimizeConfig config;
        config.n = options.n;
        config.starts = options.starts;
        config.seed = options.seed;
        const OptimizeResult result = minimize_phi(signal, config);

        if (!options.out_path.empty()) {
            std::ofstream report(options.out_path,
                                 std::ios::out | std::ios::binary);
            if (!report) {
                err << "cannot open report file '" << options.out_path
                    << "'\n";
                return kExitUsage;
            }
            write_fit_report(report, options, result);
            if (!report.flush()) {
                err << "failed writing report file '" << options.out_path
                    << "'\n";
                return kExitUsage;
            }
        }
        out << "f_min: " << format_double(result.best_phi) << "\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const IllConditionedBasis& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
}

int run_phi_map(const PhiMapOptions& options, std::ostream& out,
                std::ostream& err) {
    (void)out;
    try {
        if (options.signal != "sign") {
            throw std::invalid_argument(
                "phi-map supports only --signal sign");
        }
        if (options.mode != "1" && options.mode != "2cluster") {
            throw std::invalid_argument("unknown mode '" + options.mode +
                                        "', expected 1 or 2cluster");
        }
        const Range u_range = parse_range(options.u_range, "--u");
        const Range v_range = parse_range(options.v_range, "--v");

        std::ofstream csv(options.out_path, std::ios::out | std::ios::binary);
        if (!csv) {
            err << "cannot open output file '" << options.out_path << "'\n";
            return kExitUsage;
        }
        const Signal signal = Signal::sign();
        csv << "u,v,phi\n";
        for (double u : range_points(u_range)) {
            for (double v : range_points(v_range)) {
                FrequencySet freqs;
                if (options.mode == "1") {
                    freqs.lambdas = {Complex{u, v}};
                } else {
                    freqs.lambdas = {Complex{u, v}, Complex{u, v}};
                }
                csv << format_double(u) << ',' << format_double(v) << ','
                    << format_double(phi(freqs, signal)) << "\n";
            }
        }
        if (!csv.flush()) {
            err << "failed writing output file '" << options.out_path << "'\n";
            return kExitUsage;
        }
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const IllConditionedBasis& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
}

int run_reproduce(const ReproduceOptions& options, std::ostream& out,
                  std::ostream& err) {
    (void)err;
    const double nudge = options.inject_error ? 1e-3 : 0.0;
    const Signal sign = Signal::sign();

    const double v0 = solve_v0() + nudge;
    FrequencySet plus;
    plus.lambdas = {Complex{0.0, v0}};
    FrequencySet minus;
    minus.lambdas = {Complex{0.0, -v0}};
    const double phi_plus = phi(plus, sign) + nudge;
    const double phi_minus = phi(minus, sign) + nudge;
    const double cluster_limit = phi_sign_cluster_axis(0.0) + nudge;

    OptimizeConfig config;
    config.n = 2;
    config.starts = 64;
    config.seed = 7;
    const OptimizeResult two = minimize_phi(sign, config);

    std::vector<ReproduceRow> rows = {
        {"stationary frequency v0", v0, 0.742019, 1e-5, true},
        {"one-frequency deflection at +i v0", phi_plus, 0.4749383, 1e-5, true},
        {"one-frequency deflection at -i v0", phi_minus, 0.4749383, 1e-5,
         true},
        {"coincident-pair limit (v -> 0)", cluster_limit, 0.25, 1e-12, true},
        {"best two-frequency deflection found", two.best_phi, 0.0, 0.0,
         false},
    };

    bool all_ok = true;
    out << std::left << std::setw(40) << "quantity" << std::setw(24) << "value"
        << std::setw(14) << "reference"
        << "status\n";
    for (const ReproduceRow& row : rows) {
        char value[32];
        std::snprintf(value, sizeof value, "%.12g", row.value);
        out << std::left << std::setw(40) << row.quantity << std::setw(24)
            << value;
        if (row.checked) {
            const bool ok = std::fabs(row.value - row.reference) <=
                            row.tolerance;
            all_ok = all_ok && ok;
            char reference[32];
            std::snprintf(reference, sizeof reference, "%.8g", row.reference);
            out << std::setw(14) << reference << (ok ? "ok" : "MISS") << "\n";
        } else {
            out << std::setw(14) << "-"
                << "info\n";
        }
    }
    out << "two-frequency spectrum found:";
    for (const Complex& lambda : two.best_freqs.lambdas) {
        out << " (" << format_double(lambda.real()) << ", "
            << format_double(lambda.imag()) << ")";
    }
    out << "\n";
    return all_ok ? kExitOk : kExitReproductionMiss;
}

} // namespace expsum

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "relspin/types.hpp"

namespace relspin::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Bad command-line or config input; maps to kExitUsage.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Linear (or logarithmic) grid "start:stop:steps".
struct Grid {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;
    bool log = false;

    static Grid parse(const std::string& text);
    std::vector<double> points() const;
    void validate(const char* name) const;
};

enum class Format { Csv, Json };

struct ScanConfig {
    double mass = 1.0;
    /// |p| grid; scans default to 0:1:11 when unset.
    std::optional<Grid> pmag;
    /// Explicit momentum; overrides pmag/direction with a single point.
    std::optional<Vec3> momentum;
    Vec3 direction = Vec3::UnitZ();
    std::vector<OperatorKind> kinds{OperatorKind::NormalizedPL};
    /// Measurement axis (particle A for `sample`).
    Vec3 axis = Vec3::UnitZ();
    /// Particle B axis for `sample`; defaults to `axis`.
    std::optional<Vec3> axis_b;
    Grid theta{0.0, 3.14159265358979323846, 9};
    std::uint64_t seed = 42;
    std::uint64_t shots = 10000;
    int restarts = 32;
    int threads = 1;
    double tol = 1e-6;
    Format format = Format::Csv;
    std::string out;
    /// Input table for `table`.
    std::string table_in;
    /// Added to the CHSH oracle before comparison; exercises the disagreement path.
    double inject_oracle_offset = 0.0;

    void validate() const;

    /// Momenta visited by scan commands.
    std::vector<Vec3> momentum_grid() const;
    /// Momentum for single-point commands: --p, a one-step --pmag, or rest.
    Vec3 single_momentum() const;
    Vec3 unit_direction() const;
};

/// Applies keys from a JSON config file. Unknown keys and malformed JSON are
/// usage errors; syntax errors carry the line and column.
void apply_config_file(const std::string& path, ScanConfig& cfg);

using Cell = std::variant<double, std::int64_t, std::string>;

/// Output of one command. JSON mirrors the rows as an array of objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    int exit_code = kExitOk;
    /// When set, emitted verbatim instead of the rows (JSON-only commands).
    std::optional<nlohmann::json> document;
};

/// CSV with a header line, or JSON; numbers printed with 9 significant digits.
std::string render(const Table& table, Format format);

/// Parses "x,y,z".
Vec3 parse_vec3(const std::string& text);
OperatorKind parse_kind(const std::string& text);
std::vector<OperatorKind> parse_kinds(const std::string& text);

/// Seed from RELSPIN_SEED when set, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback);

/// Columns p_mag, defect.
Table cmd_commutator_scan(const ScanConfig& cfg);
/// Columns p_mag, theta, s_plus; theta is the angle between the axis and the momentum.
Table cmd_eigen_scan(const ScanConfig& cfg);
/// Columns p_mag, kind, chsh_opt, chsh_oracle, status for the singlet with p_A = p_B.
Table cmd_bell_scan(const ScanConfig& cfg);
/// Columns outcome, count, probability, shots, seed.
Table cmd_sample(const ScanConfig& cfg);
/// JSON document with the 18 table entries and the spin-algebra verdict.
Table cmd_table(const ScanConfig& cfg);

}  // namespace relspin::cli

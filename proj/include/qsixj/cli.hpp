#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsixj/networks.hpp"
#include "qsixj/recur.hpp"

namespace qsixj::cli {

enum class Mode { Single, Column, Table, Verify, Bench };
enum class Convention { Kl, Rw, Tet };
enum class Format { Text, Json, Csv };
enum class MethodChoice { Oracle, Recurrence, Eigen, Auto };

enum ExitStatus : int { kOk = 0, kInternal = 1, kValidation = 2, kNumerical = 3 };

struct JobSpec {
  std::string regime = "classical";
  Convention convention = Convention::Tet;
  Mode mode = Mode::Single;
  Format format = Format::Text;
  MethodChoice method = MethodChoice::Auto;
  std::optional<int> a, b, c, d, j, l;
  std::vector<int> rw_args;  // j1 j2 j3 J1 J2 J3 as twice-spins
  bool two_sided = false;
  int sweep = -1;            // verify: all labels <= sweep instead of one space
  double tolerance = 1e-9;   // verify: mixed tolerance relative to the column norm
  std::vector<int> bench_sizes{100, 1000, 10000};
  int threads = 0;           // 0: QSIXJ_THREADS or hardware concurrency
};

// One evaluated symbol, labelled with the (a, b, c, d, j, l) schema. For the
// Racah-Wigner convention {j1 j2 j3; J1 J2 J3} the fields hold
// a=j1, b=j2, j=j3, c=J1, d=J2, l=J3.
struct Record {
  int a = 0, b = 0, c = 0, d = 0, j = 0, l = 0;
  NetValue value;
  Method method = Method::Oracle;
};

// Worker count from JobSpec::threads, then QSIXJ_THREADS, then the hardware.
int worker_count(const JobSpec& job);

// Throws ValidationError for an inconsistent job (rw outside the classical
// regime, eigen outside definite regimes, missing labels, ...).
void validate(const JobSpec& job);

// Evaluation without serialization; Single/Column/Table modes.
std::vector<Record> evaluate(const JobSpec& job);

std::string format_records(const std::vector<Record>& records, Format format, Convention convention);
// Parses one json line written by format_records.
Record parse_json_record(const std::string& line);

// Full command line: parse, run, serialize. Returns the process exit status.
// Errors are written to err as one line "error: <kind>: <reason>".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsixj::cli

#include "qsixj/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "qsixj/eigen.hpp"
#include "qsixj/ops.hpp"

namespace qsixj::cli {

namespace {

using nlohmann::json;

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string method_name(Method m) { return to_string(m); }

Method resolve(MethodChoice choice, Mode mode, const QContext& ctx) {
  switch (choice) {
    case MethodChoice::Oracle: return Method::Oracle;
    case MethodChoice::Recurrence: return Method::Recurrence;
    case MethodChoice::Eigen: return Method::Eigen;
    case MethodChoice::Auto: break;
  }
  if (mode == Mode::Single) return Method::Oracle;
  if (mode == Mode::Table && ctx.is_definite()) return Method::Eigen;
  return Method::Recurrence;
}

int require(const std::optional<int>& v, const char* name) {
  if (!v) throw ValidationError(std::string("missing label -") + name);
  return *v;
}

// Runs fn(0..count-1) on up to `workers` threads; exceptions are rethrown
// on the calling thread.
void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Converts a Tet value to the KL 6j-symbol at the same (j, l).
NetValue tet_to_kl(const FourValentSpace& sp, int j, const NetValue& tet) {
  if (tet.is_exact_zero()) return tet;
  return tet * bubble(sp.ctx, j) / (theta(sp.ctx, sp.a, sp.d, j) * theta(sp.ctx, sp.b, sp.c, j));
}

TetColumn column_by(Method m, const FourValentSpace& sp, int l, bool two_sided) {
  switch (m) {
    case Method::Oracle: return tet_column_oracle(sp, l);
    case Method::Recurrence: return tet_column_recur(sp, l, {two_sided});
    case Method::Eigen: {
      TetTable t = tet_table_eigen(sp);
      return t.columns.at(static_cast<std::size_t>(sp.l_index(l)));
    }
  }
  throw std::logic_error("unknown method");
}

TetTable table_by(Method m, const FourValentSpace& sp, bool two_sided, int workers) {
  if (m == Method::Eigen) return tet_table_eigen(sp);
  TetTable t{sp, m, std::vector<TetColumn>(static_cast<std::size_t>(sp.n))};
  parallel_for(sp.n, workers, [&](int k) {
    t.columns[static_cast<std::size_t>(k)] = column_by(m, sp, sp.l_at(k), two_sided);
  });
  return t;
}

std::vector<Record> records_of(const TetTable& t, Convention conv) {
  const FourValentSpace& sp = t.space;
  std::vector<Record> out;
  for (int jk = 0; jk < sp.n; ++jk)
    for (const TetColumn& col : t.columns) {
      const int j = sp.j_at(jk);
      const NetValue& v = col.values[static_cast<std::size_t>(jk)];
      out.push_back({sp.a, sp.b, sp.c, sp.d, j, col.l, conv == Convention::Kl ? tet_to_kl(sp, j, v) : v,
                     col.method});
    }
  return out;
}

// ---------------------------------------------------------------------------
// verify

struct VerifySummary {
  long spaces = 0;
  long entries = 0;
  double max_dev_recurrence = 0.0;
  double max_dev_eigen = 0.0;
  bool eigen_checked = false;
  std::string worst_case;
};

void verify_space(const FourValentSpace& sp, bool two_sided, VerifySummary& s) {
  const TetTable oracle = tet_table_oracle(sp);
  const TetTable recur = tet_table_recur(sp, {two_sided});
  std::optional<TetTable> eig;
  if (sp.ctx.is_definite()) eig = tet_table_eigen(sp);
  ++s.spaces;
  s.entries += static_cast<long>(sp.n) * sp.n;
  for (int k = 0; k < sp.n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const double dr = column_deviation(oracle.columns[uk], recur.columns[uk]);
    std::ostringstream where;
    where << "(" << sp.a << "," << sp.b << "," << sp.c << "," << sp.d << ";l=" << sp.l_at(k) << ")";
    if (dr > s.max_dev_recurrence) {
      s.max_dev_recurrence = dr;
      if (dr >= s.max_dev_eigen) s.worst_case = where.str();
    }
    if (eig) {
      s.eigen_checked = true;
      const double de = column_deviation(oracle.columns[uk], eig->columns[uk]);
      if (de > s.max_dev_eigen) {
        s.max_dev_eigen = de;
        if (de >= s.max_dev_recurrence) s.worst_case = where.str();
      }
    }
  }
}

int run_verify(const JobSpec& job, const QContext& ctx, std::ostream& out) {
  VerifySummary s;
  std::vector<FourValentSpace> spaces;
  if (job.sweep >= 0) {
    int hi = job.sweep;
    if (ctx.regime() == Regime::RootOfUnity) hi = std::min(hi, ctx.r() - 2);
    for (int a = 0; a <= hi; ++a)
      for (int b = 0; b <= hi; ++b)
        for (int c = 0; c <= hi; ++c)
          for (int d = 0; d <= hi; ++d)
            if (nonzero_conditions(ctx, a, b, c, d)) spaces.push_back(make_space(ctx, a, b, c, d));
  } else {
    FourValentSpace sp = make_space(ctx, require(job.a, "a"), require(job.b, "b"), require(job.c, "c"),
                                    require(job.d, "d"));
    if (!sp.empty()) spaces.push_back(sp);
  }
  std::vector<VerifySummary> parts(spaces.size());
  parallel_for(static_cast<int>(spaces.size()), worker_count(job),
               [&](int i) { verify_space(spaces[static_cast<std::size_t>(i)], job.two_sided, parts[static_cast<std::size_t>(i)]); });
  for (const VerifySummary& p : parts) {
    s.spaces += p.spaces;
    s.entries += p.entries;
    s.eigen_checked = s.eigen_checked || p.eigen_checked;
    if (std::max(p.max_dev_recurrence, p.max_dev_eigen) >= std::max(s.max_dev_recurrence, s.max_dev_eigen) &&
        !p.worst_case.empty())
      s.worst_case = p.worst_case;
    s.max_dev_recurrence = std::max(s.max_dev_recurrence, p.max_dev_recurrence);
    s.max_dev_eigen = std::max(s.max_dev_eigen, p.max_dev_eigen);
  }
  const bool pass = s.max_dev_recurrence <= job.tolerance && s.max_dev_eigen <= job.tolerance;

  switch (job.format) {
    case Format::Json: {
      json j{{"regime", ctx.describe()},       {"spaces", s.spaces},
             {"entries", s.entries},           {"max_dev_recurrence", s.max_dev_recurrence},
             {"tolerance", job.tolerance},     {"pass", pass},
             {"worst_case", s.worst_case}};
      j["max_dev_eigen"] = s.eigen_checked ? json(s.max_dev_eigen) : json(nullptr);
      out << j.dump() << "\n";
      break;
    }
    case Format::Csv:
      out << "regime,spaces,entries,max_dev_recurrence,max_dev_eigen,tolerance,pass\n"
          << ctx.describe() << "," << s.spaces << "," << s.entries << "," << fmt_double(s.max_dev_recurrence)
          << "," << (s.eigen_checked ? fmt_double(s.max_dev_eigen) : "") << "," << fmt_double(job.tolerance)
          << "," << (pass ? "true" : "false") << "\n";
      break;
    case Format::Text:
      out << "verify regime=" << ctx.describe() << " spaces=" << s.spaces << " entries=" << s.entries
          << " max_dev_recurrence=" << fmt_double(s.max_dev_recurrence)
          << " max_dev_eigen=" << (s.eigen_checked ? fmt_double(s.max_dev_eigen) : "n/a")
          << " tolerance=" << fmt_double(job.tolerance) << " status=" << (pass ? "pass" : "FAIL");
      if (!pass) out << " worst=" << s.worst_case;
      out << "\n";
      break;
  }
  return pass ? kOk : kNumerical;
}

// ---------------------------------------------------------------------------
// bench

struct BenchRow {
  int n = 0;
  std::uint64_t recur_ops = 0, oracle_ops = 0;
  double recur_s = 0.0, oracle_s = 0.0;
};

// Least-squares slope of log(y) against log(x).
double fit_exponent(const std::vector<BenchRow>& rows, bool oracle) {
  if (rows.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const BenchRow& r : rows) {
    const double x = std::log(static_cast<double>(r.n));
    const double y = std::log(static_cast<double>(oracle ? r.oracle_ops : r.recur_ops));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(rows.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

int run_bench(const JobSpec& job, std::ostream& out) {
  std::vector<BenchRow> rows;
  for (int n : job.bench_sizes) {
    if (n < 1) throw ValidationError("bench sizes must be >= 1");
    // Space (A, A, A, A) has dimension A + 1; take the central column.
    const int A = n - 1;
    BenchRow row;
    row.n = n;
    {
      const QContext ctx = QContext::parse(job.regime);
      const FourValentSpace sp = make_space(ctx, A, A, A, A);
      const int l = sp.l_at(sp.n / 2);
      ops::reset();
      const auto t0 = std::chrono::steady_clock::now();
      const TetColumn col = tet_column_recur(sp, l, {job.two_sided});
      row.recur_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      row.recur_ops = ops::count();
    }
    {
      const QContext ctx = QContext::parse(job.regime);
      const FourValentSpace sp = make_space(ctx, A, A, A, A);
      const int l = sp.l_at(sp.n / 2);
      ops::reset();
      const auto t0 = std::chrono::steady_clock::now();
      const TetColumn col = tet_column_oracle(sp, l);
      row.oracle_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      row.oracle_ops = ops::count();
    }
    rows.push_back(row);
  }
  const double er = fit_exponent(rows, false);
  const double eo = fit_exponent(rows, true);

  switch (job.format) {
    case Format::Json: {
      json arr = json::array();
      for (const BenchRow& r : rows)
        arr.push_back({{"n", r.n},
                       {"recurrence_ops", r.recur_ops},
                       {"recurrence_seconds", r.recur_s},
                       {"oracle_ops", r.oracle_ops},
                       {"oracle_seconds", r.oracle_s}});
      json j{{"regime", job.regime}, {"rows", arr}};
      j["recurrence_exponent"] = std::isfinite(er) ? json(er) : json(nullptr);
      j["oracle_exponent"] = std::isfinite(eo) ? json(eo) : json(nullptr);
      out << j.dump() << "\n";
      break;
    }
    case Format::Csv:
      out << "n,recurrence_ops,recurrence_seconds,oracle_ops,oracle_seconds\n";
      for (const BenchRow& r : rows)
        out << r.n << "," << r.recur_ops << "," << fmt_double(r.recur_s) << "," << r.oracle_ops << ","
            << fmt_double(r.oracle_s) << "\n";
      break;
    case Format::Text: {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%8s %16s %14s %16s %14s\n", "n", "recurrence_ops", "recurrence_s",
                    "oracle_ops", "oracle_s");
      out << buf;
      for (const BenchRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%8d %16llu %14.6f %16llu %14.6f\n", r.n,
                      static_cast<unsigned long long>(r.recur_ops), r.recur_s,
                      static_cast<unsigned long long>(r.oracle_ops), r.oracle_s);
        out << buf;
      }
      out << "fit recurrence_exponent=" << fmt_double(er) << " oracle_exponent=" << fmt_double(eo) << "\n";
      break;
    }
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// command line

struct Parsed {
  JobSpec job;
  bool help = false;
  std::string help_text;
};

void add_labels(CLI::App* sub, JobSpec& job, bool with_j, bool with_l) {
  sub->add_option("-a", job.a, "twice-spin a");
  sub->add_option("-b", job.b, "twice-spin b");
  sub->add_option("-c", job.c, "twice-spin c");
  sub->add_option("-d", job.d, "twice-spin d");
  if (with_j) sub->add_option("-j", job.j, "twice-spin j");
  if (with_l) sub->add_option("-l", job.l, "twice-spin l");
}

void add_common(CLI::App* sub, JobSpec& job) {
  sub->add_option("-q,--q,--regime", job.regime,
                  "classical | real:<q> | root:<r> | complex:<re>,<im>");
  const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};
  sub->add_option("--format", job.format, "text | json | csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  sub->add_option("--threads", job.threads, "worker threads (default: QSIXJ_THREADS or hardware)");
}

void add_method(CLI::App* sub, JobSpec& job) {
  const std::map<std::string, MethodChoice> methods{{"oracle", MethodChoice::Oracle},
                                                    {"recurrence", MethodChoice::Recurrence},
                                                    {"eigen", MethodChoice::Eigen},
                                                    {"auto", MethodChoice::Auto}};
  sub->add_option("--method", job.method, "oracle | recurrence | eigen | auto")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  sub->add_flag("--two-sided", job.two_sided, "two-sided recurrence sweep");
}

void add_convention(CLI::App* sub, JobSpec& job) {
  const std::map<std::string, Convention> conv{{"tet", Convention::Tet}, {"kl", Convention::Kl}};
  sub->add_option("--convention", job.convention, "tet | kl")
      ->transform(CLI::CheckedTransformer(conv, CLI::ignore_case));
}

Parsed parse(const std::vector<std::string>& args) {
  Parsed p;
  JobSpec& job = p.job;
  CLI::App app{"qsixj: 6j-symbols of su_q(2) by explicit sum, recurrence and eigenproblem", "qsixj"};
  app.require_subcommand(1);

  auto* tet = app.add_subcommand("tet", "single Tet(a,b,c,d;j,l)");
  add_common(tet, job);
  add_labels(tet, job, true, true);
  add_method(tet, job);

  auto* kl = app.add_subcommand("kl", "single Kauffman-Lins 6j-symbol {a b j; c d l}");
  add_common(kl, job);
  add_labels(kl, job, true, true);
  add_method(kl, job);

  auto* rw = app.add_subcommand("rw", "single Racah-Wigner 6j-symbol, six twice-spins j1 j2 j3 J1 J2 J3");
  add_common(rw, job);
  rw->add_option("labels", job.rw_args, "j1 j2 j3 J1 J2 J3 (twice-spins)")->expected(6)->required();

  auto* column = app.add_subcommand("column", "all admissible j at fixed l");
  add_common(column, job);
  add_labels(column, job, false, true);
  add_method(column, job);
  add_convention(column, job);

  auto* table = app.add_subcommand("table", "full table over admissible (j, l)");
  add_common(table, job);
  add_labels(table, job, false, false);
  add_method(table, job);
  add_convention(table, job);

  auto* verify = app.add_subcommand("verify", "compare recurrence and eigen against the explicit sum");
  add_common(verify, job);
  add_labels(verify, job, false, false);
  verify->add_flag("--two-sided", job.two_sided, "two-sided recurrence sweep");
  verify->add_option("--sweep", job.sweep, "check every space with labels <= N");
  verify->add_option("--tol", job.tolerance, "maximum deviation relative to the column norm");

  auto* bench = app.add_subcommand("bench", "operation counts and timings, recurrence vs explicit sum");
  add_common(bench, job);
  bench->add_flag("--two-sided", job.two_sided, "two-sided recurrence sweep");
  bench->add_option("--sizes", job.bench_sizes, "space dimensions n")->delimiter(',');

  std::vector<std::string> argv_store{"qsixj"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    p.help = true;
    p.help_text = app.help();
    return p;
  } catch (const CLI::ParseError& e) {
    throw ValidationError(e.what());
  }

  if (tet->parsed()) {
    job.mode = Mode::Single;
    job.convention = Convention::Tet;
  } else if (kl->parsed()) {
    job.mode = Mode::Single;
    job.convention = Convention::Kl;
  } else if (rw->parsed()) {
    job.mode = Mode::Single;
    job.convention = Convention::Rw;
  } else if (column->parsed()) {
    job.mode = Mode::Column;
  } else if (table->parsed()) {
    job.mode = Mode::Table;
  } else if (verify->parsed()) {
    job.mode = Mode::Verify;
  } else {
    job.mode = Mode::Bench;
  }
  return p;
}

void write_error(std::ostream& err, const std::string& kind, const std::string& what) {
  std::string line = what;
  std::replace(line.begin(), line.end(), '\n', ' ');
  err << "error: " << kind << ": " << line << "\n";
}

}  // namespace

int worker_count(const JobSpec& job) {
  if (job.threads > 0) return job.threads;
  if (const char* env = std::getenv("QSIXJ_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void validate(const JobSpec& job) {
  const QContext ctx = QContext::parse(job.regime);
  if (job.convention == Convention::Rw) {
    if (job.mode != Mode::Single) throw ValidationError("rw convention supports single evaluations only");
    if (ctx.regime() != Regime::Classical)
      throw UnsupportedRegime("rw convention requires the classical regime");
    if (job.rw_args.size() != 6) throw ValidationError("rw needs six twice-spins");
  }
  if (job.method == MethodChoice::Eigen && !ctx.is_definite())
    throw UnsupportedRegime("eigen method requires the classical or root-of-unity regime");
  if (job.mode == Mode::Verify && job.sweep < 0) {
    require(job.a, "a");
    require(job.b, "b");
    require(job.c, "c");
    require(job.d, "d");
  }
  if (job.tolerance <= 0.0) throw ValidationError("tolerance must be positive");
}

std::vector<Record> evaluate(const JobSpec& job) {
  validate(job);
  const QContext ctx = QContext::parse(job.regime);

  if (job.convention == Convention::Rw) {
    const auto& v = job.rw_args;
    for (int x : v)
      if (x < 0) throw ValidationError("twice-spins must be non-negative");
    return {{v[0], v[1], v[3], v[4], v[2], v[5], sixj_rw(ctx, v[0], v[1], v[2], v[3], v[4], v[5]),
             Method::Oracle}};
  }

  const FourValentSpace sp =
      make_space(ctx, require(job.a, "a"), require(job.b, "b"), require(job.c, "c"), require(job.d, "d"));
  const Method method = resolve(job.method, job.mode, ctx);
  const bool two_sided = job.two_sided || (job.method == MethodChoice::Auto && method == Method::Recurrence);
  const Convention conv = job.convention;

  switch (job.mode) {
    case Mode::Single: {
      const int j = require(job.j, "j");
      const int l = require(job.l, "l");
      if (j < 0 || l < 0) throw ValidationError("twice-spins must be non-negative");
      Record rec{sp.a, sp.b, sp.c, sp.d, j, l, {}, method};
      if (method == Method::Oracle || !sp.has_j(j) || !sp.has_l(l)) {
        // Outside the admissible ranges every method gives the exact zero.
        rec.value = conv == Convention::Kl ? sixj_kl(ctx, sp.a, sp.b, j, sp.c, sp.d, l)
                                           : tet_oracle(ctx, {sp.a, sp.b, sp.c, sp.d, j, l});
        return {rec};
      }
      const TetColumn col = column_by(method, sp, l, two_sided);
      rec.value = col.at_j(j);
      if (conv == Convention::Kl) rec.value = tet_to_kl(sp, j, rec.value);
      return {rec};
    }
    case Mode::Column: {
      const int l = require(job.l, "l");
      if (sp.empty()) return {};
      if (!sp.has_l(l))
        throw ValidationError("l=" + std::to_string(l) + " is not admissible for this space");
      TetTable t{sp, method, {column_by(method, sp, l, two_sided)}};
      std::vector<Record> out;
      for (int k = 0; k < sp.n; ++k) {
        const int j = sp.j_at(k);
        const NetValue& v = t.columns[0].values[static_cast<std::size_t>(k)];
        out.push_back({sp.a, sp.b, sp.c, sp.d, j, l, conv == Convention::Kl ? tet_to_kl(sp, j, v) : v, method});
      }
      return out;
    }
    case Mode::Table: {
      if (sp.empty()) return {};
      return records_of(table_by(method, sp, two_sided, worker_count(job)), conv);
    }
    default:
      throw ValidationError("evaluate: verify and bench modes have no records");
  }
}

std::string format_records(const std::vector<Record>& records, Format format, Convention convention) {
  std::ostringstream os;
  const char* conv = convention == Convention::Kl ? "kl" : convention == Convention::Rw ? "rw" : "tet";
  if (format == Format::Csv) os << "a,b,c,d,j,l,sign,logmag,value,cancel_digits,method\n";
  for (const Record& r : records) {
    const NetValue& v = r.value;
    const double logmag = v.logmag();
    const double value = v.to_double();
    switch (format) {
      case Format::Json: {
        json j{{"a", r.a}, {"b", r.b}, {"c", r.c}, {"d", r.d}, {"j", r.j}, {"l", r.l}, {"sign", v.sign()}};
        j["logmag"] = std::isfinite(logmag) ? json(logmag) : json(nullptr);
        j["value"] = std::isfinite(value) ? json(value) : json(nullptr);
        if (std::isinf(value)) j["overflow"] = true;
        j["cancel_digits"] = std::isfinite(v.cancel_digits()) ? json(v.cancel_digits()) : json(nullptr);
        j["method"] = method_name(r.method);
        j["convention"] = conv;
        if (v.is_exact_zero()) j["exact_zero"] = true;
        if (v.is_complex()) {
          j["re"] = v.complex().real();
          j["im"] = v.complex().imag();
        }
        os << j.dump() << "\n";
        break;
      }
      case Format::Csv:
        os << r.a << "," << r.b << "," << r.c << "," << r.d << "," << r.j << "," << r.l << "," << v.sign() << ","
           << fmt_double(logmag) << "," << fmt_double(value) << "," << fmt_double(v.cancel_digits()) << ","
           << method_name(r.method) << "\n";
        break;
      case Format::Text:
        os << conv << " a=" << r.a << " b=" << r.b << " c=" << r.c << " d=" << r.d << " j=" << r.j << " l=" << r.l
           << " sign=" << v.sign() << " logmag=" << fmt_double(logmag) << " value=" << fmt_double(value);
        if (v.is_complex()) os << " im=" << fmt_double(v.complex().imag());
        os << " cancel_digits=" << fmt_double(v.cancel_digits()) << " method=" << method_name(r.method);
        if (v.is_exact_zero()) os << " exact_zero";
        os << "\n";
        break;
    }
  }
  return os.str();
}

Record parse_json_record(const std::string& line) {
  const json j = json::parse(line);
  Record r{j.at("a"), j.at("b"), j.at("c"), j.at("d"), j.at("j"), j.at("l"), {}, Method::Oracle};
  const std::string m = j.at("method");
  r.method = m == "eigen" ? Method::Eigen : m == "recurrence" ? Method::Recurrence : Method::Oracle;
  const double cancel =
      j.at("cancel_digits").is_null() ? std::numeric_limits<double>::infinity() : j.at("cancel_digits").get<double>();
  const int sign = j.at("sign");
  if (j.value("exact_zero", false)) {
    r.value = NetValue::exact_zero(j.contains("re"));
  } else if (j.contains("re")) {
    r.value = NetValue::of(CNum{j.at("re").get<double>(), j.at("im").get<double>()}, cancel);
  } else {
    r.value = NetValue::of(sign == 0 ? SignedLog::zero() : SignedLog{sign, j.at("logmag").get<double>()}, cancel);
  }
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    Parsed p = parse(args);
    if (p.help) {
      out << p.help_text;
      return kOk;
    }
    const JobSpec& job = p.job;
    validate(job);
    if (job.mode == Mode::Verify) {
      const int status = run_verify(job, QContext::parse(job.regime), out);
      if (status != kOk) write_error(err, "numerical", "verification exceeded tolerance " + fmt_double(job.tolerance));
      return status;
    }
    if (job.mode == Mode::Bench) return run_bench(job, out);
    out << format_records(evaluate(job), job.format, job.convention);
    return kOk;
  } catch (const ValidationError& e) {
    write_error(err, e.kind(), e.what());
    return kValidation;
  } catch (const NumericalError& e) {
    write_error(err, e.kind(), e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    write_error(err, "internal", e.what());
    return kInternal;
  }
}

}  // namespace qsixj::cli

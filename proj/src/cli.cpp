#include "scs/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "scs/hecke.hpp"
#include "scs/shifted_sum.hpp"
#include "scs/verify.hpp"
#include "scs/weights.hpp"

namespace scs::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& text) {
  size_t pos = 0;
  double v = std::stod(text, &pos);
  if (pos != text.size())
    throw std::invalid_argument("malformed number '" + text + "'");
  return v;
}

std::int64_t parse_int(const std::string& text) {
  size_t pos = 0;
  long long v = std::stoll(text, &pos);
  if (pos != text.size())
    throw std::invalid_argument("malformed integer '" + text + "'");
  return v;
}

// config file: line-oriented "key = value", '#' comments, keys named after
// the long flags without dashes
void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read config file " + path);
  std::string line;
  while (std::getline(f, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line without '=': " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "suite") cfg.suite = val;
    else if (key == "pi1") cfg.pi1 = val;
    else if (key == "pi2") cfg.pi2 = val;
    else if (key == "h") cfg.h = parse_int(val);
    else if (key == "h-range") cfg.h_range = val;
    else if (key == "Y") cfg.Y = parse_double(val);
    else if (key == "Y-geom") cfg.Y_geom = val;
    else if (key == "sign") cfg.sign = val;
    else if (key == "weight") cfg.weight = val;
    else if (key == "s") cfg.s = val;
    else if (key == "k") cfg.k = static_cast<int>(parse_int(val));
    else if (key == "q") cfg.q = static_cast<int>(parse_int(val));
    else if (key == "c") cfg.c = static_cast<int>(parse_int(val));
    else if (key == "N") cfg.N = parse_int(val);
    else if (key == "double-N") cfg.double_N = (val == "true" || val == "1");
    else if (key == "out") cfg.out = val;
    else if (key == "format") cfg.format = val;
    else if (key == "threads") cfg.threads = static_cast<int>(parse_int(val));
    else if (key == "quad-nodes")
      cfg.quad_nodes = static_cast<int>(parse_int(val));
    else if (key == "seed")
      cfg.seed = static_cast<unsigned>(parse_int(val));
    else
      throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["command"] = cfg.command;
  j["suite"] = cfg.suite;
  j["pi1"] = cfg.pi1;
  j["pi2"] = cfg.pi2;
  j["h"] = cfg.h;
  j["h-range"] = cfg.h_range;
  j["Y"] = cfg.Y;
  j["Y-geom"] = cfg.Y_geom;
  j["sign"] = cfg.sign;
  j["weight"] = cfg.weight;
  j["s"] = cfg.s;
  j["k"] = cfg.k;
  j["q"] = cfg.q;
  j["c"] = cfg.c;
  j["N"] = cfg.N;
  j["double-N"] = cfg.double_N;
  j["out"] = cfg.out;
  j["format"] = cfg.format;
  j["threads"] = cfg.threads;
  j["quad-nodes"] = cfg.quad_nodes;
  j["seed"] = cfg.seed;
  return j;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// one table row as ordered (column, value) pairs, values pre-serialized
using Row = std::vector<std::pair<std::string, std::string>>;

void emit_table(std::ostream& sink, const RunConfig& cfg,
                const std::vector<Row>& rows) {
  if (cfg.format == "json") {
    ordered_json j;
    j["version"] = kVersion;
    j["config"] = config_json(cfg);
    j["rows"] = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json r;
      for (const auto& [col, val] : row) r[col] = val;
      j["rows"].push_back(std::move(r));
    }
    sink << j.dump(2) << "\n";
    return;
  }
  // CSV with the resolved config echoed as leading comment lines
  ordered_json cj = config_json(cfg);
  for (const auto& [key, val] : cj.items()) {
    sink << "# " << key << " = ";
    if (val.is_string())
      sink << val.get<std::string>();
    else if (val.is_number_float())
      sink << fmt_double(val.get<double>());
    else
      sink << val.dump();
    sink << "\n";
  }
  if (rows.empty()) return;
  for (size_t i = 0; i < rows[0].size(); ++i)
    sink << (i ? "," : "") << csv_field(rows[0][i].first);
  sink << "\r\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      sink << (i ? "," : "") << csv_field(row[i].second);
    sink << "\r\n";
  }
}

WeightFunction parse_weight(const std::string& spec) {
  if (spec.empty())
    throw std::invalid_argument("--weight is required for sum");
  if (spec == "bump") return WeightFunction::bump(1.5, 0.5);
  if (spec.rfind("bump:", 0) == 0) {
    std::string body = spec.substr(5);
    size_t comma = body.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("--weight bump:<center>,<width>");
    return WeightFunction::bump(parse_double(body.substr(0, comma)),
                                parse_double(body.substr(comma + 1)));
  }
  if (spec.rfind("expfam:", 0) == 0) {
    std::string body = spec.substr(7);
    size_t comma = body.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("--weight expfam:<k>,<z>");
    return WeightFunction::exp_family(
        static_cast<int>(parse_int(body.substr(0, comma))),
        parse_complex(body.substr(comma + 1)));
  }
  throw std::invalid_argument("unknown weight '" + spec + "'");
}

HeckeSequence build_sequence(const std::string& spec, std::int64_t len) {
  if (spec == "delta") return tau_sequence(len);
  if (spec.rfind("eis:", 0) == 0)
    return eisenstein_sequence(cplx(0, parse_double(spec.substr(4))), len);
  if (spec.rfind("maass:", 0) == 0)
    return maass_ingest(spec.substr(6)).second;  // length checked downstream
  throw std::invalid_argument("unknown representation '" + spec + "'");
}

SumSign parse_sign(const std::string& spec) {
  if (spec == "plus") return SumSign::Plus;
  if (spec == "minus") return SumSign::Minus;
  throw std::invalid_argument("--sign must be plus or minus");
}

std::vector<std::int64_t> parse_h_range(const std::string& spec) {
  size_t colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("--h-range a:b");
  std::int64_t a = parse_int(spec.substr(0, colon));
  std::int64_t b = parse_int(spec.substr(colon + 1));
  if (a < 1 || b < a) throw std::invalid_argument("--h-range needs 1 <= a <= b");
  std::vector<std::int64_t> out;
  for (std::int64_t h = a; h <= b; ++h) out.push_back(h);
  return out;
}

std::vector<double> parse_y_geom(const std::string& spec) {
  size_t c1 = spec.find(':');
  size_t c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw std::invalid_argument("--Y-geom a:b:r");
  double a = parse_double(spec.substr(0, c1));
  double b = parse_double(spec.substr(c1 + 1, c2 - c1 - 1));
  double r = parse_double(spec.substr(c2 + 1));
  if (a <= 0 || b < a || r <= 1)
    throw std::invalid_argument("--Y-geom needs 0 < a <= b and ratio > 1");
  std::vector<double> out;
  for (double y = a; y <= b * (1 + 1e-9); y *= r) out.push_back(y);
  return out;
}

int cmd_verify(const RunConfig& cfg, std::ostream& sink) {
  VerifyOptions vo;
  vo.quad_nodes = cfg.quad_nodes;
  vo.seed = cfg.seed;
  SuiteReport rep = run_suite(cfg.suite, vo);
  ordered_json j;
  j["version"] = kVersion;
  j["config"] = config_json(cfg);
  j["suite"] = rep.suite;
  j["pass"] = rep.pass;
  j["checks"] = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["residual"] = c.residual;
    cj["tolerance"] = c.tolerance;
    cj["pass"] = c.pass;
    j["checks"].push_back(std::move(cj));
  }
  sink << j.dump(2) << "\n";
  return rep.pass ? 0 : 1;
}

int cmd_sum(const RunConfig& cfg, std::ostream& sink) {
  WeightFunction base = parse_weight(cfg.weight);
  SumSign sign = parse_sign(cfg.sign);
  WeightFunction W1 = base;
  WeightFunction W2 = sign == SumSign::Plus ? base.reflected() : base;
  double maxsup = 0;
  for (const auto* w : {&W1, &W2})
    maxsup = std::max(maxsup,
                      std::max(std::abs(w->support_lo), std::abs(w->support_hi)));
  if (!std::isfinite(maxsup))
    throw std::invalid_argument("sum needs a compactly supported weight");

  bool growth = !cfg.h_range.empty() || !cfg.Y_geom.empty();
  std::vector<Row> rows;
  if (growth) {
    if (cfg.h_range.empty() || cfg.Y_geom.empty())
      throw std::invalid_argument(
          "growth mode needs both --h-range and --Y-geom");
    auto h_list = parse_h_range(cfg.h_range);
    auto y_list = parse_y_geom(cfg.Y_geom);
    std::int64_t len = static_cast<std::int64_t>(
                           std::ceil(y_list.back() * maxsup)) +
                       h_list.back() + 8;
    auto seq1 = build_sequence(cfg.pi1, len);
    auto seq2 = build_sequence(cfg.pi2, len);
    SumSpec tmpl(h_list.front(), y_list.front(), sign, std::move(seq1),
                 std::move(seq2), W1, W2);
    auto rep = growth_fit(h_list, y_list, tmpl);
    for (const auto& ps : rep.per_shift)
      rows.push_back({{"h", std::to_string(ps.h)},
                      {"slope", fmt_double(ps.slope)},
                      {"sup_ratio", fmt_double(ps.sup_ratio)},
                      {"points", std::to_string(ps.points)}});
  } else {
    std::int64_t len =
        static_cast<std::int64_t>(std::ceil(cfg.Y * maxsup)) + cfg.h + 8;
    auto seq1 = build_sequence(cfg.pi1, len);
    auto seq2 = build_sequence(cfg.pi2, len);
    SumSpec spec(cfg.h, cfg.Y, sign, std::move(seq1), std::move(seq2), W1, W2);
    auto t0 = std::chrono::steady_clock::now();
    SumReport r = direct_sum_report(spec);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              t0)
                    .count();
    rows.push_back({{"h", std::to_string(cfg.h)},
                    {"Y", fmt_double(cfg.Y)},
                    {"sign", cfg.sign},
                    {"value", format_complex(r.value)},
                    {"termwise_bound", fmt_double(r.termwise_bound)},
                    {"runtime_s", fmt_double(dt)}});
  }
  emit_table(sink, cfg, rows);
  return 0;
}

int cmd_dirichlet(const RunConfig& cfg, std::ostream& sink) {
  cplx s = parse_complex(cfg.s);
  if (s.real() <= 1)
    throw std::domain_error(
        "Re s <= 1: analytic continuation of the series is out of scope");
  std::vector<std::int64_t> Ns = {cfg.N};
  if (cfg.double_N) Ns.push_back(2 * cfg.N);
  auto seq1 = build_sequence(cfg.pi1, Ns.back() + cfg.h);
  auto seq2 = build_sequence(cfg.pi2, Ns.back());
  std::vector<Row> rows;
  for (std::int64_t N : Ns) {
    auto part = dirichlet_partial(cfg.h, s, cfg.k, N, seq1, seq2);
    rows.push_back({{"h", std::to_string(cfg.h)},
                    {"s", cfg.s},
                    {"k", std::to_string(cfg.k)},
                    {"N", std::to_string(N)},
                    {"value", format_complex(part.value)},
                    {"tail_bound", fmt_double(part.tail_bound)}});
  }
  emit_table(sink, cfg, rows);
  return 0;
}

}  // namespace

cplx parse_complex(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (ch != ' ') t.push_back(ch);
  if (t.empty()) throw std::invalid_argument("empty complex literal");
  if (t.back() != 'i') return cplx(parse_double(t), 0);
  t.pop_back();
  // split at the last sign that does not follow an exponent marker
  size_t split = std::string::npos;
  for (size_t i = 1; i < t.size(); ++i)
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E')
      split = i;
  auto imag_part = [](const std::string& b) {
    if (b.empty() || b == "+") return 1.0;
    if (b == "-") return -1.0;
    return parse_double(b);
  };
  if (split == std::string::npos) return cplx(0, imag_part(t));
  return cplx(parse_double(t.substr(0, split)), imag_part(t.substr(split)));
}

std::string format_complex(cplx v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
  return buf;
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
  std::string quoted = "\"";
  for (char ch : raw) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  std::vector<std::string> argv_store = args;
  std::vector<const char*> argv;
  argv.push_back("scs");
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  try {
    // config file first, so flags parsed below override it
    for (int i = 1; i + 1 < argc; ++i)
      if (std::string(argv[i]) == "--config")
        load_config_file(argv[i + 1], cfg);

    CLI::App app{"shifted convolution sums toolkit"};
    app.require_subcommand(1);
    // free the short -h for the shift parameter
    app.set_help_flag("--help", "print help");
    std::string config_path;

    auto add_common = [&](CLI::App* sub) {
      sub->set_help_flag("--help", "print help");
      sub->add_option("--out", cfg.out);
      sub->add_option("--format", cfg.format)
          ->check(CLI::IsMember({"csv", "json"}));
      sub->add_option("--threads", cfg.threads)->check(CLI::PositiveNumber);
      sub->add_option("--config", config_path);
      sub->add_option("--seed", cfg.seed);
    };

    CLI::App* verify = app.add_subcommand("verify", "run invariant suites");
    verify->add_option("--suite", cfg.suite)
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--quad-nodes", cfg.quad_nodes)
        ->check(CLI::PositiveNumber);
    add_common(verify);

    CLI::App* sum = app.add_subcommand("sum", "shifted convolution sums");
    sum->add_option("--pi1", cfg.pi1);
    sum->add_option("--pi2", cfg.pi2);
    sum->add_option("--h", cfg.h);
    sum->add_option("--h-range", cfg.h_range);
    sum->add_option("--Y", cfg.Y);
    sum->add_option("--Y-geom", cfg.Y_geom);
    sum->add_option("--sign", cfg.sign);
    sum->add_option("--weight", cfg.weight);
    add_common(sum);

    CLI::App* dirichlet =
        app.add_subcommand("dirichlet", "shifted Dirichlet series partials");
    dirichlet->add_option("--pi1", cfg.pi1);
    dirichlet->add_option("--pi2", cfg.pi2);
    dirichlet->add_option("--h", cfg.h);
    dirichlet->add_option("--s", cfg.s);
    dirichlet->add_option("--k", cfg.k);
    dirichlet->add_option("--N", cfg.N);
    dirichlet->add_flag("--double-N", cfg.double_N);
    add_common(dirichlet);

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {  // --help
        out << app.help();
        return 0;
      }
      err << "usage error: " << e.what() << "\n";
      return 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.threads > 0) set_thread_limit(cfg.threads);

    std::ofstream file;
    if (!cfg.out.empty()) {
      file.open(cfg.out);
      if (!file) {
        err << "cannot open output path " << cfg.out << "\n";
        return 3;
      }
    }
    std::ostream& sink = cfg.out.empty() ? out : file;

    if (cfg.command == "verify") return cmd_verify(cfg, sink);
    if (cfg.command == "sum") return cmd_sum(cfg, sink);
    return cmd_dirichlet(cfg, sink);
  } catch (const MaassIngestError& e) {
    err << "ingest error: " << e.what() << "\n";
    return 3;
  } catch (const InsufficientSequenceError& e) {
    err << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "check failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace scs::cli

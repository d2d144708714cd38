#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "document.hpp"
#include "svf/battery.hpp"
#include "svf/engine.hpp"
#include "svf/error.hpp"
#include "svf/format.hpp"
#include "svf/realize.hpp"

namespace svf::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string format = "csv";
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  int steps = 8;
  int max_blocks = 3;
  int max_size = 6;
};

Document load(const std::string& path) {
  if (path.empty()) throw ParseError("--input is required");
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string csv_field(const std::string& s) { return s.find(',') == std::string::npos ? s : "\"" + s + "\""; }

// Renders rows of cells either as CSV or as right-aligned columns.
std::string render_rows(const std::vector<std::vector<std::string>>& rows, const std::string& format) {
  std::string out;
  if (format == "csv") {
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_field(row[c]);
      out += "\n";
    }
    return out;
  }
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()));
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << row[c];
    }
    os << "\n";
  }
  return os.str();
}

int cmd_eval(const Options& opt, std::string& report) {
  const Document doc = load(opt.input);
  const AlgebraElement a = element_of(doc);
  std::vector<std::vector<std::string>> rows{{"g", "s_g"}};
  if (doc.k0_class) {
    K0Class g;
    try {
      g = parse_k0_class(*doc.k0_class);
    } catch (const Error& e) {
      throw ParseError(std::string("k0_class: ") + e.what());
    }
    rows.push_back({g.str(), format_real(svf(a.algebra(), a, g))});
  } else {
    const SvfTable table = svf_table(a.algebra(), a);
    for (std::size_t i = 0; i < table.values().size(); ++i) {
      rows.push_back({table.class_at(i).str(), format_real(table.values()[i])});
    }
  }
  report = render_rows(rows, opt.format);
  return kOk;
}

int cmd_battery(const Options& opt, std::string& report) {
  BatteryOptions b;
  if (!opt.input.empty()) {
    const Document doc = load(opt.input);
    if (doc.trials) b.trials = *doc.trials;
    if (doc.seed) b.seed = *doc.seed;
  }
  if (opt.trials) b.trials = *opt.trials;
  if (opt.seed) b.seed = *opt.seed;
  b.max_blocks = opt.max_blocks;
  b.max_size = opt.max_size;
  if (b.trials < 1) throw ParseError("--trials must be at least 1");
  const BatteryReport r = property_battery(b);
  report = opt.format == "csv" ? r.to_csv() : r.to_table();
  return r.passed() ? kOk : kCheckFailed;
}

int cmd_realize(const Options& opt, std::string& report) {
  const Document doc = load(opt.input);
  if (!doc.target) throw ParseError("missing key \"target_function\"");
  if (opt.steps < 0) throw ParseError("--steps must be non-negative");
  const RealizationTrace trace = realize(target_of(*doc.target), opt.steps);
  std::vector<std::vector<std::string>> rows{{"n", "increment", "distance"}};
  for (std::size_t n = 0; n < trace.rounds(); ++n) {
    rows.push_back({std::to_string(n), format_real(trace.increments[n]), format_real(trace.distances[n])});
  }
  report = render_rows(rows, opt.format);
  return trace.within_envelope() ? kOk : kCheckFailed;
}

int cmd_counterexample(const Options& opt, std::string& report) {
  const CounterexampleReport r = counterexample_lex();
  std::vector<std::vector<std::string>> rows{{"n", "class", "s"}};
  for (const auto& row : r.rows) {
    rows.push_back({row.label == "n" ? std::to_string(row.n) : row.label, row.g.str(), std::to_string(row.value)});
  }
  report = render_rows(rows, opt.format);
  return r.passed() ? kOk : kCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Singular value functions on multi-matrix algebras and the dyadic tower"};
  app.name("svf");
  app.require_subcommand(1);
  Options opt;
  app.add_option("--output", opt.output, "Write the report to PATH instead of standard output");
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"csv", "table"}));

  auto* eval = app.add_subcommand("eval", "Evaluate s_g(a) for a document's element");
  auto* battery = app.add_subcommand("battery", "Run the randomized property battery");
  auto* realize_cmd = app.add_subcommand("realize", "Realize a target function on the dyadic tower");
  auto* counter = app.add_subcommand("counterexample", "Reproduce the lexicographic non-semicontinuity example");
  for (auto* sub : {eval, battery, realize_cmd, counter}) sub->fallthrough();

  eval->add_option("--input", opt.input, "Document with algebra, element and optional k0_class");
  battery->add_option("--input", opt.input, "Optional document supplying seed and trials");
  battery->add_option("--trials", opt.trials, "Number of random trials");
  battery->add_option("--seed", opt.seed, "Base seed");
  battery->add_option("--max-blocks", opt.max_blocks, "Largest number of blocks")->check(CLI::PositiveNumber);
  battery->add_option("--max-size", opt.max_size, "Largest block size")->check(CLI::PositiveNumber);
  realize_cmd->add_option("--input", opt.input, "Document with a target_function");
  realize_cmd->add_option("--steps", opt.steps, "Last round N");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "svf: " << e.what() << "\n";
    return kParseError;
  }

  std::string report;
  int code = kOk;
  try {
    if (eval->parsed()) code = cmd_eval(opt, report);
    if (battery->parsed()) code = cmd_battery(opt, report);
    if (realize_cmd->parsed()) code = cmd_realize(opt, report);
    if (counter->parsed()) code = cmd_counterexample(opt, report);
  } catch (const ParseError& e) {
    err << "svf: parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const Error& e) {
    err << "svf: " << e.what() << "\n";
    return kContractError;
  }

  if (opt.output.empty()) {
    out << report;
  } else {
    std::ofstream file(opt.output);
    if (!file || !(file << report)) {
      err << "svf: cannot write " << opt.output << "\n";
      return kParseError;
    }
  }
  return code;
}

}  // namespace svf::cli

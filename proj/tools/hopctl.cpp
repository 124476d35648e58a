#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "d2d/io.hpp"
#include "d2d/pattern.hpp"
#include "d2d/sim.hpp"
#include "d2d/verify.hpp"

namespace {

using d2d::Int;

struct PatternFlags {
  std::string family;
  Int m = 5, n = 10;
  std::optional<Int> c, u, v, e, f;
};

void add_pattern_flags(CLI::App* cmd, PatternFlags& flags) {
  cmd->add_option("--family", flags.family, "pattern family: qc|a1|a2|b1|b2")
      ->required();
  cmd->add_option("--m", flags.m, "frequency channels");
  cmd->add_option("--n", flags.n, "subframes per discovery frame");
  cmd->add_option("--c", flags.c, "parameter c (qc, b1, b2)");
  cmd->add_option("--u", flags.u, "parameter u (a1)");
  cmd->add_option("--v", flags.v, "parameter v (a1)");
  cmd->add_option("--e", flags.e, "parameter e (b1, b2)");
  cmd->add_option("--f", flags.f, "parameter f (b1, b2)");
}

// Family defaults when a parameter flag is omitted:
// qc c=0; a1 u=2, v=1; b1/b2 c=1, e=1, f=0.
d2d::PatternSpec spec_from_flags(const PatternFlags& flags) {
  auto family = d2d::family_from_name(flags.family);
  if (!family)
    throw d2d::ValidationError("unknown family '" + flags.family + "'");
  d2d::PatternSpec spec;
  spec.family = *family;
  spec.shape = {flags.m, flags.n};
  switch (spec.family) {
    case d2d::Family::QC: spec.c = flags.c.value_or(0); break;
    case d2d::Family::A1:
      spec.u = flags.u.value_or(2);
      spec.v = flags.v.value_or(1);
      break;
    case d2d::Family::A2: break;
    case d2d::Family::B1:
    case d2d::Family::B2:
      spec.c = flags.c.value_or(1);
      spec.e = flags.e.value_or(1);
      spec.f = flags.f.value_or(0);
      break;
  }
  return spec;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw d2d::ValidationError("cannot open output file '" + out_path + "'");
  out << text;
}

int run_verify(const PatternFlags& flags, Int frames, const std::string& format,
               const std::string& out_path) {
  const d2d::Pattern pattern = d2d::Pattern::make(spec_from_flags(flags));
  const auto reports = d2d::verify_all(pattern, frames);
  if (format == "json") {
    d2d::io::json arr = d2d::io::json::array();
    for (const auto& rep : reports) arr.push_back(d2d::io::report_to_json(rep));
    emit(arr.dump(2) + "\n", out_path);
  } else {
    std::string text;
    for (const auto& rep : reports) text += d2d::io::report_to_text(rep) + "\n";
    emit(text, out_path);
  }
  return d2d::all_pass(reports) ? 0 : 1;
}

int run_table(Int m, Int n, const std::string& format,
              const std::string& out_path) {
  const d2d::GridShape shape{m, n};
  if (m % 2 == 0 || m < 3 || n % m != 0)
    throw d2d::ValidationError("table requires m odd >= 3 and m | n");
  const auto rows = d2d::feature_table(shape);
  if (format == "json")
    emit(d2d::io::table_to_json(rows).dump(2) + "\n", out_path);
  else
    emit(d2d::io::table_to_text(rows), out_path);
  return 0;
}

int run_trace(const PatternFlags& flags, const std::string& start, Int frames,
              const std::string& format, const std::string& out_path) {
  const d2d::Pattern pattern = d2d::Pattern::make(spec_from_flags(flags));
  d2d::Resource r;
  try {
    const auto comma = start.find(',');
    if (comma == std::string::npos) throw std::invalid_argument(start);
    std::size_t used = 0;
    r.i = std::stoll(start.substr(0, comma), &used);
    r.j = std::stoll(start.substr(comma + 1));
  } catch (const std::exception&) {
    throw d2d::ValidationError("start must be 'i,j'");
  }
  const auto trace = d2d::io::build_trace(pattern, r, frames);
  if (format == "json") {
    emit(d2d::io::trace_to_json(trace).dump(2) + "\n", out_path);
  } else if (format == "csv") {
    emit(d2d::io::trace_to_csv(trace), out_path);
  } else {
    std::string text;
    for (const auto& pt : trace) {
      text += "t=" + std::to_string(pt.frame) + " (" +
              std::to_string(pt.resource.i) + "," +
              std::to_string(pt.resource.j) + ")";
      if (pt.invariant)
        text += " invariant " + std::to_string(pt.invariant->value) + " mod " +
                std::to_string(pt.invariant->modulus);
      text += "\n";
    }
    emit(text, out_path);
  }
  return 0;
}

int run_partition(const PatternFlags& flags, const std::string& format,
                  const std::string& out_path) {
  const d2d::Pattern pattern = d2d::Pattern::make(spec_from_flags(flags));
  if (!pattern.has_invariant())
    throw d2d::ValidationError("no invariant: QC with c != 0 has none");
  if (format == "json")
    emit(d2d::io::partition_to_json(pattern).dump(2) + "\n", out_path);
  else
    emit(d2d::io::partition_to_text(pattern), out_path);
  return 0;
}

int run_simulate(const std::string& config_path, const std::string& format,
                 const std::string& out_path) {
  const d2d::Scenario scenario = d2d::io::load_scenario(config_path);
  const d2d::SimResult result = d2d::run(scenario);
  if (format == "csv") {  // discovery CDF only
    std::string text = "frame,discovered_fraction\n";
    for (std::size_t t = 0; t < result.discovery_cdf.size(); ++t)
      text += std::to_string(t) + "," + std::to_string(result.discovery_cdf[t]) +
              "\n";
    emit(text, out_path);
  } else {
    emit(d2d::io::result_to_json(scenario, result).dump(2) + "\n", out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hopping-pattern toolkit for D2D discovery"};
  app.require_subcommand(1);

  PatternFlags verify_flags;
  Int verify_frames = 0;
  std::string verify_format = "text", verify_out;
  CLI::App* verify = app.add_subcommand("verify", "run all property checks");
  add_pattern_flags(verify, verify_flags);
  verify->add_option("--frames", verify_frames,
                     "frames for frame-dependent checks (default 2*lcm(m,n))");
  verify->add_option("--format", verify_format, "text|json");
  verify->add_option("--out", verify_out, "output path (default stdout)");

  Int table_m = 5, table_n = 10;
  std::string table_format = "text", table_out;
  CLI::App* table = app.add_subcommand("table", "pattern feature comparison table");
  table->add_option("--m", table_m, "frequency channels");
  table->add_option("--n", table_n, "subframes");
  table->add_option("--format", table_format, "text|json");
  table->add_option("--out", table_out, "output path");

  PatternFlags trace_flags;
  std::string trace_start = "0,0";
  Int trace_frames = 8;
  std::string trace_format = "text", trace_out;
  CLI::App* trace = app.add_subcommand("trace", "trajectory of one resource");
  add_pattern_flags(trace, trace_flags);
  trace->add_option("--start", trace_start, "start resource 'i,j'")->required();
  trace->add_option("--frames", trace_frames, "frames to trace");
  trace->add_option("--format", trace_format, "text|json|csv");
  trace->add_option("--out", trace_out, "output path");

  PatternFlags part_flags;
  std::string part_format = "text", part_out;
  CLI::App* part = app.add_subcommand("partition", "invariant class listing");
  add_pattern_flags(part, part_flags);
  part->add_option("--format", part_format, "text|json");
  part->add_option("--out", part_out, "output path");

  std::string sim_config, sim_format = "json", sim_out;
  CLI::App* sim = app.add_subcommand("simulate", "run a discovery scenario");
  sim->add_option("--config", sim_config, "scenario file (json)")->required();
  sim->add_option("--format", sim_format, "json|csv (csv: discovery CDF)");
  sim->add_option("--out", sim_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(verify))
      return run_verify(verify_flags, verify_frames, verify_format, verify_out);
    if (app.got_subcommand(table))
      return run_table(table_m, table_n, table_format, table_out);
    if (app.got_subcommand(trace))
      return run_trace(trace_flags, trace_start, trace_frames, trace_format,
                       trace_out);
    if (app.got_subcommand(part))
      return run_partition(part_flags, part_format, part_out);
    if (app.got_subcommand(sim))
      return run_simulate(sim_config, sim_format, sim_out);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

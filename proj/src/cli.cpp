#include "lfom/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lfom/jobs.hpp"
#include "lfom/service.hpp"

namespace lfom {
namespace {

struct Globals {
  std::string preset = "1ghz-75";
  std::string params_file;
  std::optional<double> f_c, p_t, p_th, h_t, h_r, n_l, n_n;
  std::optional<std::string> sigma2;
  int workers = 0;
  bool json_out = false;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'", path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON in '") + path + "': " + e.what(), path);
  }
}

json base_request(const Globals& g, const std::string& mode) {
  json req{{"mode", mode}, {"preset", g.preset}, {"workers", g.workers}};
  json params = g.params_file.empty() ? json::object() : read_json_file(g.params_file);
  auto put = [&params](const char* key, const std::optional<double>& v) {
    if (v) params[key] = *v;
  };
  put("f_c_hz", g.f_c);
  put("p_t_dbw_m2", g.p_t);
  put("p_th_dbw_m2", g.p_th);
  put("h_t_m", g.h_t);
  put("h_r_m", g.h_r);
  put("n_l", g.n_l);
  put("n_n", g.n_n);
  if (g.sigma2) {
    if (*g.sigma2 == "-inf" || *g.sigma2 == "none") {
      params["sigma2_dbw"] = nullptr;
    } else {
      params["sigma2_dbw"] = parse_number(*g.sigma2);
    }
  }
  if (!params.empty()) req["params"] = params;
  return req;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SchemaError("cannot write '" + path + "'", path);
  f << text;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string db_text(double v) {
  if (!(v > 0.0)) return "-inf";
  return fixed(10.0 * std::log10(v), 3);
}

std::vector<double> parse_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) out.push_back(parse_number(tok));
    }
  }
  return out;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form wireless figures of merit for building layouts", "layoutfom"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--preset", g.preset, "Parameter preset name")->capture_default_str();
  app.add_option("--params", g.params_file, "JSON file with parameter overrides");
  app.add_option("--fc", g.f_c, "Carrier frequency [Hz]");
  app.add_option("--pt", g.p_t, "Transmit power density [dBW/m^2]");
  app.add_option("--pth", g.p_th, "Receiver threshold [dBW/m^2]");
  app.add_option("--sigma2", g.sigma2, "Noise power [dBW], or -inf");
  app.add_option("--ht", g.h_t, "Transmitter height [m]");
  app.add_option("--hr", g.h_r, "Receiver height [m]");
  app.add_option("--nl", g.n_l, "LOS path-loss exponent");
  app.add_option("--nn", g.n_n, "NLOS path-loss exponent");
  app.add_option("--workers", g.workers, "Worker threads (0: all cores)");
  app.add_flag("--json", g.json_out, "Print the JSON response");

  auto* radii = app.add_subcommand("radii", "Print coverage radii R_O, R_L, R_N");

  std::string layout_path;
  double x = 0.0, y = 0.0, margin = kDefaultMargin;
  auto* evaluate = app.add_subcommand("evaluate", "FoM at one probe point");
  evaluate->add_option("--layout", layout_path, "Layout JSON")->required();
  evaluate->add_option("--x", x)->required();
  evaluate->add_option("--y", y)->required();
  evaluate->add_option("--margin", margin)->capture_default_str();

  double res = 0.25;
  std::string out_path, format, averaging = "linear";
  auto* heatmap = app.add_subcommand("heatmap", "FoM over a grid of probe points");
  heatmap->add_option("--layout", layout_path, "Layout JSON")->required();
  heatmap->add_option("--res", res, "Cell size [m]")->capture_default_str();
  heatmap->add_option("--margin", margin)->capture_default_str();
  heatmap->add_option("--averaging", averaging)->check(CLI::IsMember({"linear", "decibel"}));
  heatmap->add_option("--out", out_path, "Output file (.csv or .json); stdout if omitted");
  heatmap->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> areas, ars;
  int cells = 20;
  auto* sweep = app.add_subcommand("sweep", "Average FoM over rectangles of given area and AR");
  sweep->add_option("--areas", areas, "Areas [m^2], comma separated")->required();
  sweep->add_option("--ars", ars, "Aspect ratios >= 1, comma separated")->required();
  sweep->add_option("--cells-per-short-side", cells)->capture_default_str();
  sweep->add_option("--margin", margin)->capture_default_str();
  sweep->add_option("--averaging", averaging)->check(CLI::IsMember({"linear", "decibel"}));
  sweep->add_option("--out", out_path);
  sweep->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> probes;
  double samples = 1e7;
  std::uint64_t seed = McSpec{}.seed;
  int probe_count = 20;
  bool no_mc = false;
  auto* val = app.add_subcommand("validate", "Closed form against quadrature and Monte Carlo");
  val->add_option("--layout", layout_path, "Layout JSON; without it the toy-model sweep runs");
  val->add_option("--probe", probes, "Probe x,y (repeatable)");
  val->add_option("--probe-count", probe_count)->capture_default_str();
  val->add_option("--samples", samples)->capture_default_str();
  val->add_option("--seed", seed)->capture_default_str();
  val->add_flag("--no-mc", no_mc);
  val->add_option("--margin", margin)->capture_default_str();
  val->add_option("--out", out_path, "Write the JSON report here");

  ServiceOptions sopt;
  auto* srv = app.add_subcommand("serve", "Run the HTTP evaluation service");
  srv->add_option("--host", sopt.host)->capture_default_str();
  srv->add_option("--port", sopt.port)->capture_default_str();
  srv->add_option("--threads", sopt.threads)->capture_default_str();

  std::vector<std::string> argv_store{"layoutfom"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*radii) {
      const json resp = run_job(base_request(g, "radii"));
      if (g.json_out) {
        out << resp.dump(2) << "\n";
      } else {
        const auto& r = resp["result"];
        for (const char* k : {"r_o", "r_l", "r_n"}) {
          const std::string label = std::string("R_") + static_cast<char>(std::toupper(k[2]));
          out << label << " = " << fixed(r[k].get<double>(), 1) << " m  ("
              << format_number(r[k].get<double>()) << ")\n";
        }
      }
      return 0;
    }
    if (*evaluate) {
      json req = base_request(g, "point");
      req["layout"] = layout_to_json(load_layout_file(layout_path));
      req["probe"] = {{"x", x}, {"y", y}};
      req["margin"] = margin;
      const json resp = run_job(req);
      if (g.json_out) {
        out << resp.dump(2) << "\n";
      } else {
        const auto& f = resp["result"]["fom"];
        const auto& s = resp["result"]["signals"];
        out << "g_I     = " << format_number(f["g_i"]) << "  (" << db_text(f["g_i"]) << " dB)\n";
        out << "g_P     = " << format_number(f["g_p"]) << "  (" << db_text(f["g_p"]) << " dB)\n";
        out << "gamma_O = " << db_text(f["gamma_o"]) << " dB\n";
        out << "gamma_B = " << db_text(f["gamma_b"]) << " dB\n";
        for (const char* k : {"p_o", "i_o", "p_l", "i_l", "p_n", "i_n"}) {
          out << k << " = " << format_number(s[k]) << " W\n";
        }
      }
      return 0;
    }
    if (*heatmap) {
      json req = base_request(g, "grid");
      const Layout layout = load_layout_file(layout_path);
      req["layout"] = layout_to_json(layout);
      req["grid"] = {{"resolution", res}, {"margin", margin}, {"averaging", averaging}};
      GridOptions opt;
      opt.resolution = res;
      opt.margin = margin;
      opt.workers = g.workers;
      opt.averaging = averaging == "decibel" ? Averaging::Decibel : Averaging::Linear;
      const bool as_json =
          format == "json" || (format.empty() && out_path.size() > 5 &&
                               out_path.compare(out_path.size() - 5, 5, ".json") == 0);
      if (as_json) {
        write_output(out_path, run_job(req).dump(2) + "\n", out);
      } else {
        const ScenarioParams p = resolve_params(req);
        write_output(out_path, emit_heatmap_csv(evaluate_grid(layout, p, opt)), out);
      }
      return 0;
    }
    if (*sweep) {
      json req = base_request(g, "sweep");
      req["sweep"] = {{"areas", parse_list(areas)},
                      {"aspect_ratios", parse_list(ars)},
                      {"cells_per_short_side", cells},
                      {"margin", margin},
                      {"averaging", averaging}};
      const json resp = run_job(req);
      if (format == "json" || g.json_out) {
        write_output(out_path, resp.dump(2) + "\n", out);
      } else {
        std::vector<SweepRow> rows;
        for (const auto& r : resp["result"]) {
          rows.push_back({r["area_m2"], r["aspect_ratio"], r["width_m"], r["height_m"],
                          r["avg_g_i"], r["avg_g_p"], r["cells"]});
        }
        write_output(out_path, emit_sweep_csv(rows), out);
      }
      return 0;
    }
    if (*val) {
      json req = base_request(g, "validate");
      json v{{"samples", samples}, {"seed", seed}, {"run_mc", !no_mc}, {"margin", margin},
             {"probe_count", probe_count}};
      if (!layout_path.empty()) {
        req["layout"] = layout_to_json(load_layout_file(layout_path));
        if (!probes.empty()) {
          json list = json::array();
          for (const auto& pr : probes) {
            const auto xy = parse_list({pr});
            if (xy.size() != 2) throw SchemaError("--probe expects x,y", "--probe");
            list.push_back({xy[0], xy[1]});
          }
          v["probes"] = list;
        }
      }
      req["validate"] = v;
      const json resp = run_job(req);
      const auto& r = resp["result"];
      if (!out_path.empty()) write_output(out_path, resp.dump(2) + "\n", out);
      if (g.json_out) {
        out << resp.dump(2) << "\n";
      } else {
        const auto& q = r["quadrature"];
        out << "quadrature: " << q["toy_models"] << " toy models, max rel dev P_L="
            << format_number(q["max_rel_dev"]["p_l"]) << " I_L=" << format_number(q["max_rel_dev"]["i_l"])
            << " P_N=" << format_number(q["max_rel_dev"]["p_n"]) << " I_N=" << format_number(q["max_rel_dev"]["i_n"])
            << "  " << (q["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
        const auto& m = r["monte_carlo"];
        if (!m["probes"].empty()) {
          out << "monte carlo: " << m["probes"].size() << " probes, seed " << m["seed"] << ", max z "
              << fixed(m["max_z"], 3) << "  " << (m["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
          out << "speedup closed form vs monte carlo: " << fixed(r["timing"]["speedup"], 1) << "x\n";
        }
      }
      return r["pass"].get<bool>() ? 0 : 1;
    }
    if (*srv) {
      sopt.workers = g.workers;
      return serve(sopt);
    }
  } catch (const std::exception& e) {
    err << error_to_json(e).dump() << "\n";
    return exit_code_for(e);
  }
  return 4;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace lfom

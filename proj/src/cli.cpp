#include "graphprod/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

#include "CLI11.hpp"

#include "graphprod/config.hpp"
#include "graphprod/error.hpp"
#include "graphprod/lemma_checks.hpp"

namespace graphprod {

namespace {

using nlohmann::json;

std::string real_text(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Field for a CSV cell; quoted when it holds a separator or quote.
std::string cell(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) {
    return text;
  }
  std::string out = "\"";
  for (char c : text) {
    out += c == '"' ? std::string("\"\"") : std::string(1, c);
  }
  return out + "\"";
}

Clique parse_clique(const PresentationGraph& graph, std::string text) {
  text.erase(std::remove_if(text.begin(), text.end(),
                            [](char c) { return c == '{' || c == '}' || c == ' '; }),
             text.end());
  Clique J;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find(',', start);
    if (end == std::string::npos) {
      end = text.size();
    }
    const auto token = text.substr(start, end - start);
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || token.empty()) {
      throw ParseError("bad vertex id '" + token + "' in clique", 1, start + 1);
    }
    graph.check_vertex(static_cast<Vertex>(v));
    J.insert(static_cast<Vertex>(v));
    start = end + 1;
  }
  if (!graph.is_clique(J)) {
    throw PreconditionError("vertex set " + J.to_string() + " is not a clique");
  }
  return J;
}

struct Context {
  WorkbenchConfig config;
  std::unique_ptr<PresentationGraph> graph;
  std::unique_ptr<Window> window;
  std::filesystem::path out_dir;
  std::string format;
  std::size_t threads = 1;
  std::ostream* out = nullptr;

  const Window& win() {
    if (!window) {
      window = std::make_unique<Window>(*graph, config.window);
    }
    return *window;
  }

  /// Rejects elements the window does not hold.
  void check_in_window(const NormalForm& g) const {
    const auto& spec = config.window;
    if (g.syllable_length() > spec.lambda_max) {
      throw PreconditionError("element '" + g.to_string() + "' has lambda = " +
                              std::to_string(g.syllable_length()) + " > window.lambda_max = " +
                              std::to_string(spec.lambda_max));
    }
    if (graph->has_infinite_vertex_group() && g.ell() > spec.ell_max) {
      throw PreconditionError("element '" + g.to_string() + "' has ell = " +
                              std::to_string(g.ell()) + " > window.ell_max = " +
                              std::to_string(spec.ell_max));
    }
  }

  void check_level(std::size_t k, const char* name) const {
    if (k > config.window.lambda_max) {
      throw PreconditionError(std::string(name) + " = " + std::to_string(k) +
                              " exceeds window.lambda_max = " +
                              std::to_string(config.window.lambda_max));
    }
  }

  void emit(const std::string& command, const json& j, const std::string& csv) const {
    std::filesystem::create_directories(out_dir);
    const auto path = out_dir / (command + "." + format);
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      throw Error("cannot write '" + path.string() + "'");
    }
    file << (format == "json" ? j.dump(2) + "\n" : csv);
    *out << "wrote " << path.string() << "\n";
  }
};

int cmd_normal_form(Context& ctx, const std::string& text) {
  const auto g = parse_element(*ctx.graph, text);
  const auto shown = g.is_identity() ? std::string("1") : g.to_string();
  *ctx.out << "normal form: " << shown << "\nlambda = " << g.syllable_length()
           << "\nell = " << g.ell() << "\n";
  json j{{"input", text}, {"normal_form", g.to_string()}, {"lambda", g.syllable_length()}, {"ell", g.ell()}};
  ctx.emit("normal-form", j,
           "input,normal_form,lambda,ell\n" + cell(text) + "," + g.to_string() + "," +
               std::to_string(g.syllable_length()) + "," + std::to_string(g.ell()) + "\n");
  return 0;
}

int cmd_sphere(Context& ctx, std::size_t k) {
  ctx.check_level(k, "k");
  const auto& window = ctx.win();
  const auto level = window.sphere(k);
  const bool truncated = window.caps_ell();
  *ctx.out << "|Lambda_" << k << "| = " << level.size();
  if (truncated) {
    *ctx.out << " (restricted to ell <= " << ctx.config.window.ell_max << ")";
  }
  *ctx.out << "\n";
  json elements = json::array();
  std::string csv = "element,lambda,ell\n";
  for (const auto& g : level) {
    elements.push_back({{"element", g.to_string()}, {"ell", g.ell()}});
    csv += g.to_string() + "," + std::to_string(k) + "," + std::to_string(g.ell()) + "\n";
  }
  json j{{"k", k}, {"count", level.size()}, {"ell_restricted", truncated}, {"elements", elements}};
  if (truncated) {
    j["ell_max"] = ctx.config.window.ell_max;
  }
  ctx.emit("sphere", j, csv);
  return 0;
}

int cmd_divisors(Context& ctx, const std::string& text, std::size_t k) {
  const auto g = parse_element(*ctx.graph, text);
  ctx.check_in_window(g);
  if (k > g.syllable_length()) {
    throw PreconditionError("k = " + std::to_string(k) + " exceeds lambda = " +
                            std::to_string(g.syllable_length()) + " of '" + g.to_string() + "'");
  }
  const auto left = left_divisors(g, k);
  const auto right = right_divisors(g, k);
  *ctx.out << "element: " << g.to_string() << " (lambda = " << g.syllable_length() << ")\n"
           << left.size() << " left divisors and " << right.size() << " right divisors of length "
           << k << "\n";
  json jl = json::array();
  json jr = json::array();
  std::string csv = "side,divisor\n";
  for (const auto& d : left) {
    jl.push_back(d.to_string());
    csv += "left," + d.to_string() + "\n";
  }
  for (const auto& d : right) {
    jr.push_back(d.to_string());
    csv += "right," + d.to_string() + "\n";
  }
  ctx.emit("divisors", {{"element", g.to_string()}, {"k", k}, {"left", jl}, {"right", jr}}, csv);
  return 0;
}

int cmd_factor(Context& ctx, const std::string& text, std::size_t k, std::size_t l,
               const std::optional<std::string>& clique) {
  const auto g = parse_element(*ctx.graph, text);
  ctx.check_in_window(g);
  json rows = json::array();
  if (!clique) {
    const auto pairs = factorisations(g, k, l);
    std::string csv = "g1,g2\n";
    for (const auto& [g1, g2] : pairs) {
      rows.push_back({{"g1", g1.to_string()}, {"g2", g2.to_string()}});
      csv += g1.to_string() + "," + g2.to_string() + "\n";
    }
    *ctx.out << "|Factors_{" << k << "," << l << "}(" << g.to_string() << ")| = " << pairs.size()
             << "\n";
    ctx.emit("factor", {{"element", g.to_string()}, {"k", k}, {"l", l}, {"count", pairs.size()}, {"factorisations", rows}},
             csv);
    return 0;
  }
  const auto J = parse_clique(*ctx.graph, *clique);
  const auto triples = factorisations_clique(g, k, l, J);
  const auto bound = p1_bound(k, ctx.graph->vertex_count(), J.size());
  std::string csv = "g1,s,g2\n";
  for (const auto& f : triples) {
    rows.push_back({{"g1", f.g1.to_string()}, {"s", f.s.to_string()}, {"g2", f.g2.to_string()}});
    csv += f.g1.to_string() + "," + f.s.to_string() + "," + f.g2.to_string() + "\n";
  }
  *ctx.out << "|Factors_{" << k << "," << l << "}(" << J.to_string() << ", " << g.to_string()
           << ")| = " << triples.size() << " (bound " << bound << ")\n";
  ctx.emit("factor",
           {{"element", g.to_string()}, {"k", k}, {"l", l}, {"clique", J.to_string()},
            {"count", triples.size()}, {"bound", bound}, {"factorisations", rows}},
           csv);
  return triples.size() <= bound ? 0 : 1;
}

json decomposition_json(const P2Decomposition& d) {
  return {{"g1", d.g1.to_string()}, {"s1", d.s1.to_string()}, {"w", d.w.to_string()},
          {"s2", d.s2.to_string()}, {"g2", d.g2.to_string()}, {"J", d.J.to_string()},
          {"q", d.q}};
}

int cmd_p2(Context& ctx, const std::string& a, const std::string& b) {
  const auto h1 = parse_element(*ctx.graph, a);
  const auto h2 = parse_element(*ctx.graph, b);
  ctx.check_in_window(h1);
  ctx.check_in_window(h2);
  const auto witnesses = p2_witnesses(h1, h2);
  const auto& d = witnesses.front();
  *ctx.out << "h1 = " << h1.to_string() << ", h2 = " << h2.to_string() << "\n"
           << "g1 = " << d.g1.to_string() << ", s1 = " << d.s1.to_string()
           << ", w = " << d.w.to_string() << ", s2 = " << d.s2.to_string()
           << ", g2 = " << d.g2.to_string() << ", J = " << d.J.to_string() << ", q = " << d.q
           << "\n";
  int status = 0;
  json all = json::array();
  std::string csv = "g1,s1,w,s2,g2,J,q,ok\n";
  for (const auto& witness : witnesses) {
    const auto failure = check_p2(h1, h2, witness);
    if (failure) {
      *ctx.out << "FAILED: " << *failure << "\n";
      status = 1;
    }
    all.push_back(decomposition_json(witness));
    csv += witness.g1.to_string() + "," + witness.s1.to_string() + "," + witness.w.to_string() +
           "," + witness.s2.to_string() + "," + witness.g2.to_string() + "," +
           cell(witness.J.to_string()) + "," + std::to_string(witness.q) + "," +
           (failure ? "false" : "true") + "\n";
  }
  *ctx.out << witnesses.size() << " maximal cancellation(s)\n";
  ctx.emit("p2",
           {{"h1", h1.to_string()}, {"h2", h2.to_string()}, {"decomposition", decomposition_json(d)},
            {"witnesses", all}},
           csv);
  return status;
}

int cmd_lemma1(Context& ctx) {
  const auto report = verify_lemma1(ctx.win(), ctx.config.scan.k_max, ctx.config.scan.l_max);
  json rows = json::array();
  std::string csv = "J,k,l,ff,ff_swapped,bound,elements,ok\n";
  for (const auto& row : report.factor_rows) {
    rows.push_back({{"J", row.J.to_string()}, {"k", row.k}, {"l", row.l}, {"ff", row.ff},
                    {"ff_swapped", row.ff_swapped}, {"bound", row.bound},
                    {"elements", row.elements}, {"ok", row.ok}});
    csv += cell(row.J.to_string()) + "," + std::to_string(row.k) + "," + std::to_string(row.l) +
           "," + std::to_string(row.ff) + "," + std::to_string(row.ff_swapped) + "," +
           std::to_string(row.bound) + "," + std::to_string(row.elements) + "," +
           (row.ok ? "true" : "false") + "\n";
  }
  json mf = json::array();
  for (const auto& row : report.mf_rows) {
    mf.push_back({{"k", row.k}, {"q", row.q}, {"l", row.l}, {"mf", row.value.mf},
                  {"bound", row.value.bound}, {"ok", row.ok}});
  }
  *ctx.out << report.factor_rows.size() << " factor-count rows, " << report.mf_rows.size()
           << " MF rows, " << report.injectivity_checks << " injectivity checks: "
           << (report.ok() ? "all hold" : std::to_string(report.failures.size()) + " failures")
           << "\n";
  for (const auto& f : report.failures) {
    *ctx.out << "  " << f << "\n";
  }
  ctx.emit("verify-lemma1",
           {{"factor_counts", rows}, {"mf", mf}, {"injectivity_checks", report.injectivity_checks},
            {"failures", report.failures}},
           csv);
  return report.ok() ? 0 : 1;
}

int cmd_lemma2(Context& ctx) {
  const auto k = std::min(ctx.config.scan.k_max, ctx.config.window.lambda_max);
  const auto l = std::min(ctx.config.scan.l_max, ctx.config.window.lambda_max);
  const auto report = verify_lemma2(ctx.win(), k, l, true);
  *ctx.out << report.pairs << " pairs, " << report.witnesses << " decompositions: "
           << (report.ok() ? "all hold" : std::to_string(report.failures.size()) + " failures")
           << "\n";
  for (const auto& f : report.failures) {
    *ctx.out << "  " << f << "\n";
  }
  ctx.emit("verify-lemma2",
           {{"pairs", report.pairs}, {"witnesses", report.witnesses}, {"failures", report.failures}},
           "pairs,witnesses,failures\n" + std::to_string(report.pairs) + "," +
               std::to_string(report.witnesses) + "," + std::to_string(report.failures.size()) + "\n");
  return report.ok() ? 0 : 1;
}

int cmd_vanishing(Context& ctx) {
  const auto report = vanishing_check(ctx.win(), ctx.config.scan.k_max, ctx.config.scan.l_max,
                                      ctx.config.scan.trials, ctx.config.seed);
  *ctx.out << report.checks << " vanishing checks, " << report.violations << " violations; "
           << report.boundary_witnesses << " boundary witnesses, " << report.boundary_missing
           << " (k,l) pairs without a product at level k+l\n";
  for (const auto& f : report.failures) {
    *ctx.out << "  " << f << "\n";
  }
  ctx.emit("vanishing",
           {{"checks", report.checks}, {"violations", report.violations},
            {"boundary_witnesses", report.boundary_witnesses},
            {"boundary_missing", report.boundary_missing}, {"failures", report.failures}},
           "checks,violations,boundary_witnesses,boundary_missing\n" +
               std::to_string(report.checks) + "," + std::to_string(report.violations) + "," +
               std::to_string(report.boundary_witnesses) + "," +
               std::to_string(report.boundary_missing) + "\n");
  return report.violations == 0 ? 0 : 1;
}

int cmd_rd_scan(Context& ctx) {
  const auto report = rd_scan(ctx.win(), scan_options(ctx.config, ctx.threads));
  const auto& global = report.constants.global;
  *ctx.out << report.rows.size() << " rows; constants c = " << real_text(global.c)
           << ", r = " << global.r << (global.stable ? "" : " (unstable)") << "\n";
  if (report.envelope_fit) {
    *ctx.out << "envelope growth slope = " << real_text(report.envelope_fit->slope) << " over "
             << report.envelope_fit->points << " points\n";
  } else {
    *ctx.out << "envelope growth slope: not enough points (need k_max >= 5)\n";
  }
  *ctx.out << report.violations << " violations\n";
  for (const auto& row : report.rows) {
    if (row.violated) {
      *ctx.out << "  violated: k=" << row.k << " l=" << row.l << " m=" << row.m << " "
               << to_string(row.mode) << " ratio=" << real_text(row.ratio)
               << " bound=" << real_text(*row.bound) << "\n";
    }
  }
  ctx.emit("rd-scan", scan_json(report), scan_csv(report));
  return report.violations == 0 ? 0 : 1;
}

int cmd_clique_constants(Context& ctx) {
  auto options = scan_options(ctx.config, ctx.threads).constants;
  const auto summary = rd_constants_max(ctx.win(), options);
  std::string csv = "clique,c,r,stable,ell_max,samples\n";
  json rows = json::array();
  auto add = [&](const std::string& name, const RdConstants& c) {
    csv += cell(name) + "," + real_text(c.c) + "," + real_text(c.r) + "," +
           (c.stable ? "true" : "false") + "," + std::to_string(c.ell_max) + "," +
           std::to_string(c.samples) + "\n";
    rows.push_back({{"clique", name}, {"c", c.c}, {"r", c.r}, {"stable", c.stable},
                    {"ell_max", c.ell_max}, {"samples", c.samples}});
    *ctx.out << name << ": c = " << real_text(c.c) << ", r = " << c.r
             << (c.stable ? "" : " (unstable)") << "\n";
  };
  for (const auto& c : summary.per_clique) {
    add(c.clique->to_string(), c);
  }
  add("max", summary.global);
  ctx.emit("clique-constants", {{"cliques", rows}}, csv);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph-product normal forms and rapid-decay checks"};
  app.require_subcommand(1);
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::size_t threads = std::max(1U, std::thread::hardware_concurrency());
  std::optional<std::string> format;
  app.add_option("--config", config_path, "Workbench config (JSON)")->required();
  app.add_option("--out", out_dir, "Output directory (overrides output.dir)");
  app.add_option("--seed", seed, "Random seed (overrides seed)");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::string expr;
  std::string expr2;
  std::size_t k = 0;
  std::size_t l = 0;
  std::optional<std::string> clique;
  std::function<int(Context&)> action;

  auto* nf = app.add_subcommand("normal-form", "Canonical form, lambda and ell of an expression");
  nf->add_option("expr", expr)->required();
  nf->callback([&] { action = [&](Context& c) { return cmd_normal_form(c, expr); }; });

  auto* sp = app.add_subcommand("sphere", "Elements of syllable length k in the window");
  sp->add_option("k", k)->required();
  sp->callback([&] { action = [&](Context& c) { return cmd_sphere(c, k); }; });

  auto* dv = app.add_subcommand("divisors", "Left and right divisors of length k");
  dv->add_option("expr", expr)->required();
  dv->add_option("k", k)->required();
  dv->callback([&] { action = [&](Context& c) { return cmd_divisors(c, expr, k); }; });

  auto* fc = app.add_subcommand("factor", "Factorisations g = g1 g2 or g = g1 s g2");
  fc->add_option("expr", expr)->required();
  fc->add_option("k", k)->required();
  fc->add_option("l", l)->required();
  fc->add_option("--clique", clique, "Clique J as a comma-separated vertex list");
  fc->callback([&] { action = [&](Context& c) { return cmd_factor(c, expr, k, l, clique); }; });

  auto* p2 = app.add_subcommand("p2", "Cancellation decomposition of a product h1 h2");
  p2->add_option("expr1", expr)->required();
  p2->add_option("expr2", expr2)->required();
  p2->callback([&] { action = [&](Context& c) { return cmd_p2(c, expr, expr2); }; });

  app.add_subcommand("verify-lemma1", "Factorisation counts, injectivity and MF on the window")
      ->callback([&] { action = cmd_lemma1; });
  app.add_subcommand("verify-lemma2", "Cancellation decompositions of all windowed pairs")
      ->callback([&] { action = cmd_lemma2; });
  app.add_subcommand("vanishing", "Level-vanishing of random convolutions")
      ->callback([&] { action = cmd_vanishing; });
  app.add_subcommand("rd-scan", "Trilinear ratios, proposition check and growth fit")
      ->callback([&] { action = cmd_rd_scan; });
  app.add_subcommand("clique-constants", "Empirical (c_J, r_J) for every clique")
      ->callback([&] { action = cmd_clique_constants; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Context ctx;
    ctx.config = load_config(config_path);
    if (seed) {
      ctx.config.seed = *seed;
    }
    if (out_dir) {
      ctx.config.output_dir = *out_dir;
    }
    if (format) {
      ctx.config.format = *format;
    }
    validate(ctx.config);
    ctx.graph = build_graph(ctx.config);
    ctx.out_dir = ctx.config.output_dir;
    ctx.format = ctx.config.format;
    ctx.threads = threads;
    ctx.out = &out;
    return action(ctx);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace graphprod

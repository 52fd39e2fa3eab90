#include "tbg/cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <string>
#include <vector>

#include "tbg/io.hpp"
#include "tbg/reduction.hpp"

namespace tbg {

namespace {

struct Opts {
  int k = 2;
  int n = 0;
  int radius = 0;
  long long max_length = 0;
  std::string poly;
  std::string format = "json";
  bool trace = false;
  int verify_to = 8;
  bool unchecked = false;
  std::string mode = "sphere";
};

int handle_ball(const Opts& o, std::ostream& out) {
  const BallTable table = bfs_ball(GroupParams(o.k), o.radius);
  if (o.format == "csv")
    out << format_ball_csv(table);
  else
    out << format_ball_json(table) << "\n";
  return 0;
}

int handle_dist(const Opts& o, std::ostream& out, std::ostream& err) {
  const GroupParams params(o.k);
  const LaurentPoly F = parse_poly(o.poly);
  const Vec2 x = evaluate_rep(params, F);
  const MinimalRepResult res = minimal_representative_search(params, x, o.n);
  out << res.length << "\n";
  if (!res.verified)
    err << "note: search budget exhausted; the reported length is an upper bound\n";
  return 0;
}

int handle_reduce(const Opts& o, std::ostream& out) {
  const LaurentPoly F = parse_poly(o.poly);
  std::vector<RewriteStep> trace;
  const LaurentPoly reduced =
      reduce_full(F, o.n, o.k, o.trace ? &trace : nullptr);
  for (const RewriteStep& step : trace) out << format_trace_line(step) << "\n";
  out << format_poly(reduced) << "\n";
  return 0;
}

int require_reduced_polynomial(const LaurentPoly& F, const Opts& o, std::ostream& err) {
  if (!F.principal_part().is_zero()) {
    err << "error: expected a polynomial (no negative degrees)\n";
    return 1;
  }
  if (!is_reduced_poly(F, o.n, o.k)) {
    err << "error: polynomial is not " << o.n << "-reduced; run reduce first\n";
    return 1;
  }
  return 0;
}

int handle_classify(const Opts& o, std::ostream& out, std::ostream& err) {
  const GroupParams params(o.k);
  const LaurentPoly F = parse_poly(o.poly);
  if (int rc = require_reduced_polynomial(F, o, err)) return rc;
  const Classification c = classify_general(F, o.n, o.k);
  out << "class=" << format_class(c.cls) << " type=" << type_tag_name(c.type)
      << " length=" << n_length(F, o.n).length << "\n";
  return 0;
}

int handle_succ(const Opts& o, std::ostream& out, std::ostream& err) {
  const LaurentPoly F = parse_poly(o.poly);
  if (int rc = require_reduced_polynomial(F, o, err)) return rc;
  out << format_poly(generalized_successor(F, o.n, o.k)) << "\n";
  return 0;
}

int handle_enumerate(const Opts& o, std::ostream& out) {
  const GroupParams params(o.k);
  out << enumerate_csv_header() << "\n";
  enumerate_reduced(o.n, o.k, o.max_length,
                    [&](std::size_t index, const EnumeratedWord& word) {
                      out << format_enumerate_row(index, word,
                                                  evaluate_rep(params, word.poly))
                          << "\n";
                    });
  return 0;
}

int handle_series(const Opts& o, std::ostream& out) {
  const SeriesMode mode = o.mode == "ball" ? SeriesMode::Ball : SeriesMode::Sphere;
  const SeriesResult result =
      assemble_growth_series(o.k, o.verify_to, mode, o.unchecked);
  out << format_series_json(result) << "\n";
  return 0;
}

int handle_verify(const Opts& o, std::ostream& out) {
  const SeriesResult result = assemble_growth_series(o.k, o.radius, SeriesMode::Sphere);
  const BallTable table = bfs_ball(GroupParams(o.k), o.radius);
  out << "radius,series,bfs\n";
  for (int r = 0; r <= o.radius; ++r)
    out << r << "," << result.coefficients[static_cast<std::size_t>(r)] << ","
        << table.sphere_sizes[static_cast<std::size_t>(r)] << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"word metrics and growth series of the torus bundle groups "
               "Z^2 x| Z with monodromy trace 2k+1"};
  app.require_subcommand(1);
  Opts o;

  auto add_k = [&](CLI::App* cmd) {
    cmd->add_option("--k", o.k, "group parameter, trace 2k+1")->required();
  };

  CLI::App* ball = app.add_subcommand("ball", "ball and sphere sizes by BFS");
  add_k(ball);
  ball->add_option("--radius", o.radius, "ball radius")
      ->required()
      ->check(CLI::NonNegativeNumber);
  ball->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* dist = app.add_subcommand("dist", "word-metric length of (F, t^n)");
  add_k(dist);
  dist->add_option("--n", o.n, "level");
  dist->add_option("--poly", o.poly, "fiber polynomial, e.g. \"lo=0;4\"")->required();

  CLI::App* reduce = app.add_subcommand("reduce", "rewrite to n-reduced form");
  add_k(reduce);
  reduce->add_option("--n", o.n, "level");
  reduce->add_option("--poly", o.poly, "polynomial to reduce")->required();
  reduce->add_flag("--trace", o.trace, "print one line per rewrite step");

  CLI::App* classify = app.add_subcommand("classify", "n-class and n-type");
  add_k(classify);
  classify->add_option("--n", o.n, "level");
  classify->add_option("--poly", o.poly, "n-reduced polynomial")->required();

  CLI::App* succ = app.add_subcommand("succ", "successor along the length chain");
  add_k(succ);
  succ->add_option("--n", o.n, "level");
  succ->add_option("--poly", o.poly, "n-reduced polynomial")->required();

  CLI::App* enumerate = app.add_subcommand("enumerate", "stream the length chain as CSV");
  add_k(enumerate);
  enumerate->add_option("--n", o.n, "level");
  enumerate->add_option("--max-length", o.max_length, "emit words of length at most this")
      ->required()
      ->check(CLI::NonNegativeNumber);
  enumerate->add_option("--format", o.format, "csv")->check(CLI::IsMember({"csv"}));

  CLI::App* series = app.add_subcommand("series", "assembled rational growth series");
  add_k(series);
  series->add_option("--verify-to", o.verify_to, "certification radius")
      ->check(CLI::NonNegativeNumber);
  series->add_flag("--unchecked", o.unchecked, "skip oracle certification");
  series->add_option("--mode", o.mode, "sphere or ball")
      ->check(CLI::IsMember({"ball", "sphere"}));
  series->add_option("--format", o.format, "json")->check(CLI::IsMember({"json"}));

  CLI::App* verify = app.add_subcommand("verify", "series vs BFS report");
  add_k(verify);
  verify->add_option("--radius", o.radius, "certification radius")
      ->required()
      ->check(CLI::NonNegativeNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("tbg");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(ball)) return handle_ball(o, out);
    if (app.got_subcommand(dist)) return handle_dist(o, out, err);
    if (app.got_subcommand(reduce)) return handle_reduce(o, out);
    if (app.got_subcommand(classify)) return handle_classify(o, out, err);
    if (app.got_subcommand(succ)) return handle_succ(o, out, err);
    if (app.got_subcommand(enumerate)) return handle_enumerate(o, out);
    if (app.got_subcommand(series)) return handle_series(o, out);
    if (app.got_subcommand(verify)) return handle_verify(o, out);
  } catch (const CertificationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace tbg

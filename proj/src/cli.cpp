#include "hyperdec/cli.hpp"

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperdec/errors.hpp"
#include "hyperdec/hypercalc.hpp"
#include "hyperdec/lightstone.hpp"
#include "hyperdec/microscope.hpp"
#include "hyperdec/parser.hpp"
#include "hyperdec/serialize.hpp"
#include "hyperdec/transfer.hpp"

namespace hyperdec {

namespace {

using nlohmann::json;

// An error whose span points into `source`.
struct Located {
  Error error;
  std::string source;
};

template <class F>
auto with_source(const std::string& source, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.has_span()) throw Located{e, source};
    throw;
  }
}

struct Options {
  bool json = false;
  std::string mode;  // empty: the command's default
  unsigned precision = NumContext::kDefaultPrecision;
  std::size_t terms = NumContext::kDefaultTerms;

  std::string expr;
  std::string at;
  std::string compare;
  bool lightstone = false;
  bool parse = false;
  bool no_compress = false;
  long window = 3;
  long max_digits = 24;
  long m = 1;
  long j = 0;
  unsigned long n = 10;
  int levels = 4;
  std::string x0 = "1/2";
  long steps = 10;
  unsigned display = 6;
  bool check = false;
  int figure = 0;
  std::string center = "0";
  std::string scale = "eps";
  std::vector<std::string> points;
  std::string format = "svg";
  std::string title;
};

struct Output {
  std::vector<std::string> lines;
  std::string raw;  // printed verbatim instead of lines
  json doc = json::object();
  int code = 0;
};

std::string sign_word(int sign) { return sign < 0 ? "negative" : sign > 0 ? "positive" : "zero"; }

std::string ordering_word(std::strong_ordering o) {
  if (o < 0) return "Less";
  if (o > 0) return "Greater";
  return "Equal";
}

std::string try_render(const HyperValue& v, const RenderOptions& options = {}) {
  try {
    return render(v, options);
  } catch (const Error&) {
    return "";
  }
}

void set_value(Output& r, const HyperValue& v) {
  r.doc["value"] = v.to_string();
  r.doc["series"] = to_json(v);
  r.doc["flags"] = {{"truncated", v.truncated()}};
  const std::string text = try_render(v);
  r.doc["lightstone"] = text.empty() ? json(nullptr) : json(text);
}

class Session {
 public:
  Session(Options options, std::istream& in, std::ostream& out, std::ostream& err)
      : o_(std::move(options)), in_(in), out_(out), err_(err) {}

  Output run(const std::string& command) {
    if (command == "eval") return eval();
    if (command == "st") return st();
    if (command == "classify") return classify_cmd();
    if (command == "lightstone") return lightstone_cmd();
    if (command == "digits") return digits();
    if (command == "deriv") return deriv();
    if (command == "lim") return lim();
    if (command == "limfun") return limfun();
    if (command == "ucheck") return ucheck();
    if (command == "evt") return evt();
    if (command == "newton") return newton();
    if (command == "microscope") return microscope_cmd();
    return repl();
  }

 private:
  ContextPtr context(CoefficientMode fallback) const {
    CoefficientMode mode = fallback;
    if (o_.mode == "exact") mode = CoefficientMode::Exact;
    if (o_.mode == "float") mode = CoefficientMode::Float;
    return make_context(o_.terms, mode, o_.precision);
  }
  ContextPtr context() const { return context(CoefficientMode::Exact); }

  static Expr parse(const std::string& src) {
    return with_source(src, [&] { return parse_expr(src); });
  }

  static HyperValue value_of(const std::string& src, const ContextPtr& ctx) {
    return with_source(src, [&] {
      ParsedInput p = parse_input(src);
      if (p.point) return eval_star(p.expr, evaluate(*p.point, ctx));
      return evaluate(p.expr, ctx);
    });
  }

  static Coefficient standard_point(const std::string& src, const ContextPtr& ctx) {
    HyperValue v = value_of(src, ctx);
    if (!v.is_standard()) throw Error(ErrorKind::DomainError, "'" + src + "' is not a standard real");
    return standard_part(v);
  }

  static std::string text(const Coefficient& c) { return c.to_string(); }

  Output eval() {
    const ContextPtr ctx = context();
    HyperValue v = value_of(o_.expr, ctx);
    Output r;
    set_value(r, v);
    r.lines.push_back(v.to_string());
    if (o_.lightstone) {
      r.lines.push_back(r.doc["lightstone"].is_string() ? r.doc["lightstone"].get<std::string>()
                                                         : "(no Lightstone form)");
    }
    std::optional<HyperValue> target;
    if (!o_.compare.empty()) {
      target = value_of(o_.compare, ctx);
    } else if (!v.is_standard()) {
      try {
        if (classify(v).magnitude != Magnitude::Infinite) target = HyperValue::constant(ctx, standard_part(v));
      } catch (const Error&) {
      }
    }
    if (target) {
      try {
        const std::string word = ordering_word(compare(v, *target));
        r.lines.push_back("compare to " + target->to_string() + ": " + word);
        r.doc["compare"] = {{"to", target->to_string()}, {"result", word}};
      } catch (const Error&) {
        if (!o_.compare.empty()) throw;
      }
    }
    return r;
  }

  Output st() {
    const ContextPtr ctx = context();
    HyperValue v = value_of(o_.expr, ctx);
    Coefficient s = standard_part(v);
    Output r;
    r.lines.push_back(text(s));
    r.doc["value"] = text(s);
    r.doc["flags"] = {{"truncated", v.truncated()}};
    return r;
  }

  Output classify_cmd() {
    HyperValue v = value_of(o_.expr, context());
    Classification c = classify(v);
    Output r;
    r.lines.push_back(to_string(c.magnitude) + ", " + sign_word(c.sign));
    set_value(r, v);
    r.doc["magnitude"] = to_string(c.magnitude);
    r.doc["sign"] = c.sign;
    return r;
  }

  RenderOptions render_options() const {
    RenderOptions opts;
    opts.window = o_.window;
    opts.compress = !o_.no_compress;
    opts.max_digits = o_.max_digits;
    return opts;
  }

  Output lightstone_cmd() {
    const ContextPtr ctx = context();
    Output r;
    if (o_.parse) {
      HyperValue v = with_source(o_.expr, [&] { return parse_lightstone(o_.expr, ctx); });
      set_value(r, v);
      r.lines.push_back(v.to_string());
      return r;
    }
    HyperValue v = value_of(o_.expr, ctx);
    const std::string s = render(v, render_options());
    set_value(r, v);
    r.doc["lightstone"] = s;
    r.lines.push_back(s);
    return r;
  }

  Output digits() {
    HyperValue v = value_of(o_.expr, context());
    const Position p{o_.m, o_.j};
    const int d = digit_at(v, p);
    Output r;
    r.lines.push_back(std::to_string(d));
    r.doc["value"] = std::to_string(d);
    r.doc["position"] = p.to_string();
    r.doc["digit"] = d;
    return r;
  }

  Output deriv() {
    const ContextPtr ctx = context();
    const Expr f = parse(o_.expr);
    const Coefficient a = standard_point(o_.at, ctx);
    DerivativeResult d = with_source(o_.expr, [&] { return derivative(f, a, ProbeSet::defaults(ctx)); });
    if (!d.exists()) {
      auto [i, k] = *d.disagreement;
      throw Error(ErrorKind::NoLimit, "no derivative at " + text(a) + ": difference quotients " +
                                          text(d.quotients[i]) + " and " + text(d.quotients[k]) +
                                          " depend on the infinitesimal");
    }
    Output r;
    r.lines.push_back(text(*d.value));
    r.doc["value"] = text(*d.value);
    json quotients = json::array();
    for (const auto& q : d.quotients) quotients.push_back(text(q));
    r.doc["quotients"] = std::move(quotients);
    return r;
  }

  static void describe(Output& r, const LimitResult& res, const std::string& internal_name) {
    std::string line = to_string(res.kind);
    r.doc["kind"] = to_string(res.kind);
    switch (res.kind) {
      case LimitKind::Converges:
        line += ": " + text(res.limit);
        r.doc["value"] = text(res.limit);
        break;
      case LimitKind::Diverges:
        line += res.sign > 0 ? ": +inf" : ": -inf";
        r.doc["value"] = res.sign > 0 ? "+inf" : "-inf";
        break;
      default:
        if (!res.reason.empty()) line += ": " + res.reason;
        r.doc["value"] = nullptr;
    }
    r.lines.push_back(line);
    r.doc["reason"] = res.reason;
    if (res.internal) {
      r.lines.push_back(internal_name + " = " + res.internal->to_string());
      r.doc["internal"] = res.internal->to_string();
      r.doc["flags"] = {{"truncated", res.internal->truncated()}};
    }
    if (res.internal_squared) {
      r.doc["internal_squared"] = res.internal_squared->to_string();
      if (res.squared_disagrees) r.lines.push_back("warning: the value at n = H^2 disagrees");
    }
  }

  Output lim() {
    const ContextPtr ctx = context();
    const Expr u = parse(o_.expr);
    LimitResult res = with_source(o_.expr, [&] { return limit_seq(u, ctx); });
    Output r;
    describe(r, res, "u(H)");
    return r;
  }

  Output limfun() {
    const ContextPtr ctx = context();
    const Expr f = parse(o_.expr);
    const Coefficient a = standard_point(o_.at, ctx);
    LimitResult res = with_source(o_.expr, [&] { return limit_fun(f, a, ProbeSet::defaults(ctx)); });
    Output r;
    describe(r, res, "f(a + eps)");
    return r;
  }

  Output ucheck() {
    const ContextPtr ctx = context();
    const Expr f = parse(o_.expr);
    const ProbeSet probes = ProbeSet::defaults(ctx);
    ContinuityResult res;
    if (o_.at.empty()) {
      res = with_source(o_.expr, [&] { return uniform_continuity_probe(f, probes); });
    } else {
      const HyperValue x = value_of(o_.at, ctx);
      res = with_source(o_.expr, [&] { return continuity_probe(f, x, probes); });
    }
    Output r;
    r.lines.push_back(to_string(res.verdict));
    r.doc["value"] = to_string(res.verdict);
    if (res.witness) {
      const auto& w = *res.witness;
      r.lines.push_back("witness x = " + w.x.to_string());
      r.lines.push_back("witness y = " + w.y.to_string());
      r.lines.push_back("f(y) - f(x) = " + w.difference.to_string());
      json witness{{"x", w.x.to_string()}, {"y", w.y.to_string()}, {"difference", w.difference.to_string()}};
      try {
        const std::string s = text(standard_part(w.difference));
        r.lines.push_back("st(f(y) - f(x)) = " + s);
        witness["st_difference"] = s;
      } catch (const Error&) {
      }
      r.doc["witness"] = std::move(witness);
    }
    for (const auto& note : res.notes) r.lines.push_back("note: " + note);
    r.doc["notes"] = res.notes;
    return r;
  }

  Output evt() {
    const Expr f = parse(o_.expr);
    EvtResult res = with_source(o_.expr, [&] { return evt_demo(f, o_.n, o_.levels); });
    Output r;
    json rows = json::array();
    for (const EvtRow& row : res.refinement) {
      r.lines.push_back("n = " + std::to_string(row.n) + ": max at i = " + std::to_string(row.index) +
                        ", x = " + to_string(row.point) + ", f(x) = " + to_string(row.value));
      rows.push_back({{"n", row.n}, {"index", row.index}, {"x", to_string(row.point)},
                      {"f", to_string(row.value)}});
    }
    r.lines.push_back("argmax x = " + to_string(res.point) + ", f(x) = " + to_string(res.value));
    r.doc["value"] = to_string(res.point);
    r.doc["max"] = to_string(res.value);
    r.doc["refinement"] = std::move(rows);
    return r;
  }

  Output newton() {
    const Expr f = parse(o_.expr);
    const HyperValue start = value_of(o_.x0, exact_context());
    if (!start.is_standard()) throw Error(ErrorKind::DomainError, "--x0 must be a rational number");
    NewtonOptions options;
    options.steps = o_.steps;
    options.precision = o_.precision;
    options.display_digits = o_.display;
    options.mode = o_.mode == "exact" ? CoefficientMode::Exact : CoefficientMode::Float;
    const Rational x0 = standard_part(start).to_rational();

    Output r;
    auto trace_lines = [&](const NewtonTrace& t) {
      for (std::size_t i = 0; i < t.iterates.size(); ++i) {
        r.lines.push_back("x_" + std::to_string(i) + " = " + t.displays[i] + "  (" +
                          t.iterates[i].to_string(t.precision) + ")");
      }
      r.lines.push_back("stop: " + to_string(t.stop));
      r.lines.push_back("final display: " + t.displays.back());
    };
    if (o_.check) {
      CheckReport report = with_source(o_.expr, [&] { return theorem_check(f, x0, options); });
      trace_lines(report.trace);
      for (const auto& v : report.violations) {
        r.lines.push_back(std::string(v.boundary ? "boundary" : "violated") + " at n = " +
                          std::to_string(v.index) + ": " + v.assertion);
      }
      if (report.ok()) r.lines.push_back("invariants: hold");
      if (report.first_nines_index) {
        r.lines.push_back("all nines from n = " + std::to_string(*report.first_nines_index));
      }
      if (report.quadratic_constant) {
        r.lines.push_back("quadratic constant: " + report.quadratic_constant->to_string(12));
      }
      r.doc = to_json(report);
      r.doc["value"] = report.trace.displays.back();
      r.code = report.ok() ? 0 : 1;
    } else {
      NewtonTrace t = with_source(o_.expr, [&] { return newton_trace(f, x0, options); });
      trace_lines(t);
      r.doc = to_json(t);
      r.doc["value"] = t.displays.back();
    }
    return r;
  }

  Output microscope_cmd() {
    const ContextPtr ctx = context();
    std::optional<MicroscopeScene> scene;
    if (o_.figure != 0) {
      scene = figure_scene(o_.figure, ctx);
    } else {
      scene = MicroscopeScene{value_of(o_.center, ctx), value_of(o_.scale, ctx), {}, "", o_.center, {}};
      for (const std::string& p : o_.points) {
        HyperValue v = value_of(p, ctx);
        std::string label = try_render(v);
        scene->points.push_back({label.empty() ? v.to_string() : label, v});
      }
    }
    if (!o_.title.empty()) scene->title = o_.title;
    const SceneFormat format = o_.format == "ascii" ? SceneFormat::Ascii : SceneFormat::Svg;
    Output r;
    r.raw = microscope(*scene, format);
    r.doc["value"] = r.raw;
    json placed = json::array();
    for (const PlacedPoint& p : place_points(*scene)) {
      placed.push_back({{"label", p.label},
                        {"abscissa", p.abscissa ? json(text(*p.abscissa)) : json(nullptr)},
                        {"off_scale", p.off_scale}});
    }
    r.doc["points"] = std::move(placed);
    return r;
  }

  Output repl() {
    static const std::vector<std::string> commands{"eval", "st", "classify", "lightstone", "digits", "deriv",
                                                    "lim", "limfun", "ucheck", "evt", "newton", "microscope"};
    std::vector<std::string> globals{"--prec", std::to_string(o_.precision), "--terms", std::to_string(o_.terms)};
    if (!o_.mode.empty()) globals.insert(globals.end(), {"--mode", o_.mode});
    if (o_.json) globals.push_back("--json");
    std::string line;
    while (std::getline(in_, line)) {
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      line = line.substr(first);
      if (line == "quit" || line == "exit") break;
      const std::string word = line.substr(0, line.find(' '));
      std::vector<std::string> args = globals;
      if (std::find(commands.begin(), commands.end(), word) != commands.end()) {
        // "<command> <expression>": the rest of the line is one argument
        args.push_back(word);
        const auto rest = line.find_first_not_of(' ', word.size());
        if (rest != std::string::npos) {
          args.push_back("--");
          args.push_back(line.substr(rest));
        }
      } else {
        args.insert(args.end(), {"eval", "--", line});
      }
      run_cli(args, in_, out_, err_);
    }
    return {};
  }

  Options o_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

json error_envelope(const Error& e) {
  json span = nullptr;
  if (e.has_span()) span = {e.span().begin, e.span().end};
  return {{"ok", false},
          {"value", nullptr},
          {"lightstone", nullptr},
          {"flags", {{"truncated", false}}},
          {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.message()}, {"span", span}}}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Hyperreal calculator: infinitesimals, standard parts, Lightstone decimals.", "hyperdec"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Print a JSON envelope instead of text");
  app.add_option("--mode", o.mode, "Coefficient arithmetic")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--prec", o.precision, "Decimal digits in float mode")->check(CLI::Range(10u, 100000u));
  app.add_option("--terms", o.terms, "Series terms kept (truncation order K)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));

  auto expr_arg = [&](CLI::App* sub, const char* what) { sub->add_option("expr", o.expr, what)->required(); };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate an expression (optionally '... at x = v')");
  expr_arg(eval, "Expression");
  eval->add_flag("--lightstone", o.lightstone, "Also print the Lightstone decimal");
  eval->add_option("--compare", o.compare, "Compare against this value (default: the standard part)");

  expr_arg(app.add_subcommand("st", "Standard part"), "Expression");
  expr_arg(app.add_subcommand("classify", "Infinitesimal, finite-appreciable or infinite, and sign"),
           "Expression");

  CLI::App* ls = app.add_subcommand("lightstone", "Render as a Lightstone decimal, or parse one");
  expr_arg(ls, "Expression, or Lightstone text with --parse");
  ls->add_flag("--parse", o.parse, "Read Lightstone notation and print the value");
  ls->add_option("--window", o.window, "Digits shown per block")->check(CLI::Range(1L, 1000L));
  ls->add_option("--max-digits", o.max_digits, "Cap on digits per run")->check(CLI::Range(1L, 100000L));
  ls->add_flag("--no-compress", o.no_compress, "Do not collapse repeated leading digits");

  CLI::App* digits = app.add_subcommand("digits", "Digit at decimal place m*H + j");
  expr_arg(digits, "Expression in [0, 1)");
  digits->add_option("--m", o.m, "Multiple of H")->check(CLI::NonNegativeNumber);
  digits->add_option("--j", o.j, "Offset");

  CLI::App* deriv = app.add_subcommand("deriv", "Derivative st((f(a + h) - f(a))/h) over probe infinitesimals");
  expr_arg(deriv, "Function of x");
  deriv->add_option("--at", o.at, "Standard point a")->required();

  expr_arg(app.add_subcommand("lim", "Limit of a sequence u(n) as n -> inf, via n = H"), "Sequence in n");

  CLI::App* limfun = app.add_subcommand("limfun", "Limit of f(x) as x -> a, via a +- eps");
  expr_arg(limfun, "Function of x");
  limfun->add_option("--at", o.at, "Standard point a")->required();

  CLI::App* ucheck = app.add_subcommand("ucheck", "Uniform continuity probe (or continuity at --at)");
  expr_arg(ucheck, "Function of x");
  ucheck->add_option("--at", o.at, "Probe continuity at this point only");

  CLI::App* evt = app.add_subcommand("evt", "Extreme value on the grid i/n of [0, 1]");
  expr_arg(evt, "Function of x");
  evt->add_option("--n", o.n, "Grid size")->check(CLI::Range(1UL, kEvtMaxPoints));
  evt->add_option("--levels", o.levels, "Refinements n, 2n, 4n, ...")->check(CLI::Range(1, 30));

  CLI::App* newton = app.add_subcommand("newton", "Newton iteration x + |f(x)|/f'(x) from below the root 1");
  expr_arg(newton, "Function of x");
  newton->add_option("--x0", o.x0, "Rational start below 1");
  newton->add_option("--steps", o.steps, "Iterations")->check(CLI::Range(0L, 100000L));
  newton->add_option("--display", o.display, "Calculator display digits")->check(CLI::Range(1u, 1000u));
  newton->add_flag("--check", o.check, "Check x_n < 1, monotonicity and the mean value bound");

  CLI::App* micro = app.add_subcommand("microscope", "Draw points near a center, magnified by 1/scale");
  micro->add_option("--figure", o.figure, "Preset scene")->check(CLI::IsMember({2, 3}));
  micro->add_option("--center", o.center, "Center value");
  micro->add_option("--scale", o.scale, "Positive scale (one unit on the drawing)");
  micro->add_option("--point", o.points, "Point to draw (repeatable)");
  micro->add_option("--format", o.format, "svg or ascii")->check(CLI::IsMember({"svg", "ascii"}));
  micro->add_option("--title", o.title, "Title line");

  app.add_subcommand("repl", "Read expressions (or '<command> <expr>') from standard input");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    Session session(o, in, out, err);
    Output r = session.run(command);
    if (command == "repl") return 0;
    if (o.json) {
      json envelope{{"ok", true}, {"value", nullptr}, {"lightstone", nullptr}, {"flags", {{"truncated", false}}}};
      envelope.update(r.doc);
      if (r.code != 0) envelope["ok"] = false;
      out << envelope.dump(2) << "\n";
    } else if (!r.raw.empty()) {
      out << r.raw;
    } else {
      for (const auto& line : r.lines) out << line << "\n";
    }
    return r.code;
  } catch (const Located& located) {
    const Error& e = located.error;
    if (o.json) {
      out << error_envelope(e).dump(2) << "\n";
    } else {
      err << "error: " << to_string(e.kind()) << ": " << e.message() << "\n"
          << caret_line(located.source, e.span()) << "\n";
    }
    return e.is_usage_error() ? 2 : 1;
  } catch (const Error& e) {
    if (o.json) {
      out << error_envelope(e).dump(2) << "\n";
    } else {
      err << "error: " << to_string(e.kind()) << ": " << e.message() << "\n";
    }
    return e.is_usage_error() ? 2 : 1;
  }
}

}  // namespace hyperdec

#include "hyperdec/microscope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "hyperdec/errors.hpp"
#include "hyperdec/expr.hpp"
#include "hyperdec/lightstone.hpp"
#include "hyperdec/transfer.hpp"

namespace hyperdec {

namespace {

constexpr int kSvgWidth = 600;
constexpr int kSvgAxisY = 110;
constexpr int kSvgHalfAxis = 240;  // pixels from the center to +-R
constexpr int kAsciiWidth = 61;
constexpr int kAsciiHalfAxis = 24;

// Abscissae are drawn on [-R, R] with R the smallest integer >= 1 covering every finite point.
long axis_radius(const std::vector<PlacedPoint>& placed) {
  long r = 1;
  for (const auto& p : placed) {
    if (!p.abscissa) continue;
    Integer up = -(-p.abscissa->abs()).floor();
    if (!up.fits_slong_p()) return std::numeric_limits<long>::max();
    r = std::max(r, up.get_si());
  }
  return r;
}

std::vector<long> ticks(long r) {
  std::vector<long> out;
  if (r <= 10) {
    for (long t = -r; t <= r; ++t) out.push_back(t);
  } else {
    out = {-r, 0, r};
  }
  return out;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string abscissa_text(const PlacedPoint& p) {
  if (p.abscissa) return p.abscissa->to_string();
  return p.off_scale < 0 ? "-inf (off scale)" : "+inf (off scale)";
}

std::string center_label(const MicroscopeScene& scene) {
  return scene.center_label.empty() ? scene.center.to_string() : scene.center_label;
}

std::string render_svg(const MicroscopeScene& scene, const std::vector<PlacedPoint>& placed) {
  const long r = axis_radius(placed);
  const int height = 200 + 18 * static_cast<int>(scene.notes.size());
  auto px = [&](const Coefficient& a) {
    return kSvgWidth / 2.0 + a.to_double() / static_cast<double>(r) * kSvgHalfAxis;
  };
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSvgWidth << "\" height=\""
    << height << "\" viewBox=\"0 0 " << kSvgWidth << " " << height << "\">\n"
    << "  <rect x=\"0\" y=\"0\" width=\"" << kSvgWidth << "\" height=\"" << height
    << "\" fill=\"white\"/>\n";
  if (!scene.title.empty()) {
    s << "  <text x=\"300\" y=\"28\" font-family=\"serif\" font-size=\"16\" text-anchor=\"middle\">"
      << xml_escape(scene.title) << "</text>\n";
  }
  s << "  <line x1=\"40\" y1=\"" << kSvgAxisY << "\" x2=\"560\" y2=\"" << kSvgAxisY
    << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  for (long t : ticks(r)) {
    const std::string x = fixed2(kSvgWidth / 2.0 + static_cast<double>(t) / r * kSvgHalfAxis);
    s << "  <line x1=\"" << x << "\" y1=\"" << kSvgAxisY - 6 << "\" x2=\"" << x << "\" y2=\""
      << kSvgAxisY + 6 << "\" stroke=\"black\"/>\n"
      << "  <text x=\"" << x << "\" y=\"" << kSvgAxisY + 24
      << "\" font-family=\"serif\" font-size=\"12\" text-anchor=\"middle\">" << t << "</text>\n";
  }
  s << "  <text x=\"300\" y=\"" << kSvgAxisY + 42
    << "\" font-family=\"serif\" font-size=\"12\" text-anchor=\"middle\">0 = "
    << xml_escape(center_label(scene)) << ", unit = " << xml_escape(scene.scale.to_string()) << "</text>\n";
  for (std::size_t i = 0; i < placed.size(); ++i) {
    const PlacedPoint& p = placed[i];
    const int label_y = kSvgAxisY - 18 - 16 * static_cast<int>(i % 2);
    if (p.abscissa) {
      const std::string x = fixed2(px(*p.abscissa));
      s << "  <circle cx=\"" << x << "\" cy=\"" << kSvgAxisY << "\" r=\"4\" fill=\"black\"/>\n"
        << "  <text x=\"" << x << "\" y=\"" << label_y
        << "\" font-family=\"serif\" font-size=\"13\" text-anchor=\"middle\">" << xml_escape(p.label)
        << "</text>\n";
    } else {
      const bool left = p.off_scale < 0;
      const int tip = left ? 12 : kSvgWidth - 12;
      const int back = left ? 28 : kSvgWidth - 28;
      s << "  <polygon points=\"" << tip << "," << kSvgAxisY << " " << back << "," << kSvgAxisY - 7 << " "
        << back << "," << kSvgAxisY + 7 << "\" fill=\"black\"/>\n"
        << "  <text x=\"" << back << "\" y=\"" << label_y << "\" font-family=\"serif\" font-size=\"13\""
        << " text-anchor=\"" << (left ? "start" : "end") << "\">" << xml_escape(p.label) << "</text>\n";
    }
  }
  int y = 190;
  for (const std::string& note : scene.notes) {
    s << "  <text x=\"40\" y=\"" << y << "\" font-family=\"serif\" font-size=\"13\">" << xml_escape(note)
      << "</text>\n";
    y += 18;
  }
  s << "</svg>\n";
  return s.str();
}

std::string render_ascii(const MicroscopeScene& scene, const std::vector<PlacedPoint>& placed) {
  const long r = axis_radius(placed);
  auto column = [&](double a) {
    return kAsciiWidth / 2 + static_cast<int>(std::lround(a / static_cast<double>(r) * kAsciiHalfAxis));
  };
  std::string axis(kAsciiWidth, '-');
  std::string numbers(kAsciiWidth, ' ');
  for (long t : ticks(r)) {
    const int c = column(static_cast<double>(t));
    axis[c] = '+';
    const std::string text = std::to_string(t);
    const int start = std::clamp(c - static_cast<int>(text.size()) / 2, 0,
                                 kAsciiWidth - static_cast<int>(text.size()));
    numbers.replace(start, text.size(), text);
  }
  for (const auto& p : placed) {
    if (p.abscissa) {
      axis[column(p.abscissa->to_double())] = 'o';
    } else {
      axis[p.off_scale < 0 ? 0 : kAsciiWidth - 1] = p.off_scale < 0 ? '<' : '>';
    }
  }
  std::ostringstream s;
  if (!scene.title.empty()) s << scene.title << "\n\n";
  s << axis << "\n" << numbers << "\n";
  s << "0 = " << center_label(scene) << ", unit = " << scene.scale.to_string() << "\n\n";
  for (const auto& p : placed) s << "  at " << abscissa_text(p) << ": " << p.label << "\n";
  if (!scene.notes.empty()) s << "\n";
  for (const auto& note : scene.notes) s << note << "\n";
  return s.str();
}

}  // namespace

std::vector<PlacedPoint> place_points(const MicroscopeScene& scene) {
  if (scene.scale.is_zero() || classify(scene.scale).sign <= 0) {
    throw Error(ErrorKind::InvalidScale, "microscope scale must be positive, got " + scene.scale.to_string());
  }
  std::vector<PlacedPoint> out;
  for (const ScenePoint& p : scene.points) {
    HyperValue offset = (p.value - scene.center) / scene.scale;
    PlacedPoint placed{p.label, std::nullopt, 0};
    Classification c = classify(offset);
    if (c.magnitude == Magnitude::Infinite) {
      placed.off_scale = c.sign;
    } else {
      placed.abscissa = standard_part(offset);
    }
    out.push_back(std::move(placed));
  }
  return out;
}

std::string microscope(const MicroscopeScene& scene, SceneFormat format) {
  const auto placed = place_points(scene);
  return format == SceneFormat::Svg ? render_svg(scene, placed) : render_ascii(scene, placed);
}

MicroscopeScene figure_scene(int figure, ContextPtr ctx) {
  const HyperValue one = HyperValue::constant(ctx, Rational(1));
  const HyperValue tau = HyperValue::tau(ctx);
  if (figure == 2) {
    MicroscopeScene scene{one, tau, {}, "1 - eps < 1 < 1 + eps under a microscope of power 1/eps", "1", {}};
    for (const HyperValue& v : {one - tau, one, one + tau}) scene.points.push_back({render(v), v});
    return scene;
  }
  if (figure == 3) {
    using namespace fx;
    const HyperValue x = one - tau;
    const HyperValue dx = x - one;
    const HyperValue dy = x * x - one;
    const Expr secant = (pow(var(), 2) - constant(1)) / (var() - constant(1));
    const HyperValue slope = eval_star(secant, x);
    MicroscopeScene scene{HyperValue::zero(ctx), tau, {}, "secant of y = x^2 between x = 1 - eps and x = 1", "0", {}};
    scene.points.push_back({"dx", dx});
    scene.points.push_back({"dy", dy});
    scene.notes.push_back("x = " + render(x));
    scene.notes.push_back("dx = " + render(dx));
    scene.notes.push_back("dy = " + dy.to_string());
    scene.notes.push_back("dy/dx = " + slope.to_string());
    scene.notes.push_back("st(dy/dx) = " + standard_part(slope).to_string());
    return scene;
  }
  throw Error(ErrorKind::InvalidArgument, "no preset for figure " + std::to_string(figure));
}

}  // namespace hyperdec

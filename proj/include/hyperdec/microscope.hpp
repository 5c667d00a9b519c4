#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperdec/hyper_value.hpp"

namespace hyperdec {

struct ScenePoint {
  std::string label;
  HyperValue value;
};

/// A number line through `center`, magnified so that `scale` is one unit.
struct MicroscopeScene {
  HyperValue center;
  HyperValue scale;
  std::vector<ScenePoint> points;
  std::string title;
  std::string center_label;        // defaults to the center's canonical text
  std::vector<std::string> notes;  // extra lines under the axis
};

enum class SceneFormat { Svg, Ascii };

struct PlacedPoint {
  std::string label;
  std::optional<Coefficient> abscissa;  // st((x - c)/s) when finite
  int off_scale = 0;                    // -1 or +1 when (x - c)/s is infinite
};

/// Throws InvalidScale unless scale > 0.
std::vector<PlacedPoint> place_points(const MicroscopeScene& scene);

/// Deterministic SVG 1.1 or plain-text drawing.
std::string microscope(const MicroscopeScene& scene, SceneFormat format);

/// Preset scenes: 2 is 1 - eps, 1, 1 + eps at scale eps; 3 is the secant of
/// y = x^2 between 1 - eps and 1. Other numbers throw InvalidArgument.
MicroscopeScene figure_scene(int figure, ContextPtr ctx);

}  // namespace hyperdec

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catsp/geometry.hpp"
#include "catsp/instance.hpp"
#include "catsp/kdtree.hpp"
#include "catsp/matrix.hpp"
#include "catsp/zones.hpp"

namespace catsp {

inline constexpr double kDefaultBeta = 200.0;   // meters
inline constexpr double kDefaultAlpha = 0.01;   // per meter
inline constexpr double kNeglectedWeight = 1e-3;
// Tail mass actually discarded; a tenth of kNeglectedWeight so the pruned
// heading stays within kNeglectedWeight relative error on dense aligned fields.
inline constexpr double kPruneTailMass = 1e-4;

// A fragment of the displacement between two consecutive zone centroids of a
// historical route, in projected meters.
struct StepVector {
  Vec2 origin;
  Vec2 tip;

  Vec2 vec() const { return tip - origin; }
  double length() const { return norm(tip - origin); }
  Vec2 direction() const {
    const double len = length();
    return len == 0.0 ? Vec2{} : vec() * (1.0 / len);
  }
};

// Splits segment a->b into pieces of length beta; the last piece may be shorter.
std::vector<StepVector> split_segment(Vec2 a, Vec2 b, double beta);

// Radius beyond which step vectors are ignored. The exponential kernel's
// planar tail mass beyond r is e^{-alpha r}(1 + alpha r) of the total; r is
// chosen so that this fraction equals kPruneTailMass.
double pruning_radius(double alpha);

struct Heading {
  Vec2 h;
  std::size_t support = 0;  // step vectors inside the pruning radius

  // No usable historical information at this point.
  bool empty() const { return support == 0 || (h.x == 0.0 && h.y == 0.0); }
};

class VectorField {
 public:
  VectorField() = default;
  VectorField(std::vector<StepVector> steps, double alpha, double beta, double ref_lat);

  const std::vector<StepVector>& steps() const { return steps_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double max_d() const { return max_d_; }
  const Projection& projection() const { return projection_; }
  bool empty() const { return steps_.empty(); }

  // Sum of step vectors weighted by exp(-alpha * |p - origin|) over origins
  // within max_d of p.
  Heading heading(Vec2 p) const;

 private:
  std::vector<StepVector> steps_;
  double alpha_ = kDefaultAlpha;
  double beta_ = kDefaultBeta;
  double max_d_ = 0.0;
  Projection projection_;
  KdTree index_;
};

// Connects consecutive zone centroids of every history (centroids computed
// from the history's own points, depot excluded) and splits the connections
// into step vectors. Coordinates are projected at the mean latitude of all
// history points.
VectorField build_field(std::span<const HistoricalRoute> histories, double beta = kDefaultBeta,
                        double alpha = kDefaultAlpha);

std::string dump_field(const VectorField& field);
VectorField parse_field(std::string_view json_text);
void save_field(const VectorField& field, const std::filesystem::path& path);
VectorField load_field(const std::filesystem::path& path);

// Zone centroids of an instance in the field's projection.
std::vector<Vec2> projected_centroids(const VectorField& field, const ZoneIndex& zi);

std::vector<Heading> zone_headings(const VectorField& field, const ZoneIndex& zi);

// H(i, j) = delta/2 + (1 - delta) * eps with delta the centroid distance over
// the largest centroid distance and eps = (1 + cos theta) / 2, theta being the
// angle between h(i) and centroid(j) - centroid(i). Rows without information
// are 0.5. Diagonal entries are 0.5.
SquareMatrix transition_matrix(std::span<const Vec2> centroids, std::span<const Heading> headings);
SquareMatrix transition_matrix(const VectorField& field, const ZoneIndex& zi);

// A(i, j) = angle(h(i), centroid(j) - centroid(i)) in degrees / 180. Rows
// without information and coincident centroids are 0.5.
SquareMatrix deviation_matrix(std::span<const Vec2> centroids, std::span<const Heading> headings);
SquareMatrix deviation_matrix(const VectorField& field, const ZoneIndex& zi);

}  // namespace catsp

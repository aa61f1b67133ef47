#pragma once

// Planar regions used as holes or counting windows: disks, convex polygons,
// centred annuli and finite unions of these.

#include <algorithm>
#include <cmath>
#include <vector>

#include "holelab/core.hpp"

namespace holelab {

class HoleRegion {
 public:
  enum class Kind { Disk, ConvexPolygon, Annulus, Union };

  static HoleRegion disk(Point center, double radius) {
    require(radius > 0.0 && std::isfinite(radius), "HoleRegion: disk radius must be positive");
    HoleRegion h(Kind::Disk);
    h.center_ = center;
    h.r2_ = radius;
    return h;
  }

  /// Vertices in either orientation; stored counter-clockwise.
  static HoleRegion polygon(std::vector<Point> vertices) {
    require(vertices.size() >= 3, "HoleRegion: polygon needs at least three vertices");
    double twice_area = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) twice_area += cross(vertices[i], vertices[(i + 1) % vertices.size()]);
    require(std::abs(twice_area) > 1e-12, "HoleRegion: polygon has zero area");
    if (twice_area < 0.0) std::reverse(vertices.begin(), vertices.end());
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point e1 = vertices[(i + 1) % n] - vertices[i], e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
      require(cross(e1, e2) >= -1e-12 * std::abs(e1) * std::abs(e2), "HoleRegion: polygon must be convex");
    }
    HoleRegion h(Kind::ConvexPolygon);
    h.vertices_ = std::move(vertices);
    Point c = 0.0;
    for (const Point& v : h.vertices_) c += v;
    h.center_ = c / static_cast<double>(n);
    for (const Point& v : h.vertices_) h.r2_ = std::max(h.r2_, std::abs(v - h.center_));
    return h;
  }

  /// r1 < |z| < r2 around the origin.
  static HoleRegion annulus(double r1, double r2) {
    require(r1 >= 0.0 && r2 > r1 && std::isfinite(r2), "HoleRegion: annulus needs 0 <= r1 < r2");
    HoleRegion h(Kind::Annulus);
    h.r1_ = r1;
    h.r2_ = r2;
    return h;
  }

  static HoleRegion union_of(std::vector<HoleRegion> parts) {
    require(!parts.empty(), "HoleRegion: empty union");
    HoleRegion h(Kind::Union);
    // bounding circle: centre of the part centres, radius covering every part
    Point c = 0.0;
    for (const auto& p : parts) c += p.center_;
    c /= static_cast<double>(parts.size());
    double r = 0.0;
    for (const auto& p : parts) r = std::max(r, std::abs(p.center_ - c) + p.bound_radius());
    h.center_ = c;
    h.r2_ = r;
    h.parts_ = std::move(parts);
    return h;
  }

  Kind kind() const { return kind_; }
  Point center() const { return center_; }
  double radius() const { return r2_; }  // disk radius / outer annulus radius
  double inner_radius() const { return r1_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<HoleRegion>& parts() const { return parts_; }

  /// Open region membership.
  bool contains(Point z) const {
    switch (kind_) {
      case Kind::Disk:
        return std::norm(z - center_) < r2_ * r2_;
      case Kind::Annulus: {
        const double a = std::norm(z);
        return a > r1_ * r1_ && a < r2_ * r2_;
      }
      case Kind::ConvexPolygon:
        for (std::size_t i = 0; i < vertices_.size(); ++i)
          if (cross(vertices_[(i + 1) % vertices_.size()] - vertices_[i], z - vertices_[i]) <= 0.0) return false;
        return true;
      case Kind::Union:
        for (const auto& p : parts_)
          if (p.contains(z)) return true;
        return false;
    }
    return false;
  }

  /// Every point of the region lies within bound_radius() of bound_center().
  Point bound_center() const { return kind_ == Kind::Annulus ? Point(0.0) : center_; }
  double bound_radius() const { return r2_; }

  double area() const {
    switch (kind_) {
      case Kind::Disk:
        return kPi * r2_ * r2_;
      case Kind::Annulus:
        return kPi * (r2_ * r2_ - r1_ * r1_);
      case Kind::ConvexPolygon: {
        double s = 0.0;
        for (std::size_t i = 0; i < vertices_.size(); ++i) s += cross(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
        return 0.5 * s;
      }
      case Kind::Union: {
        // midpoint grid over the bounding square; overlaps make this the only generic route
        constexpr int m = 1200;
        const double h = 2.0 * r2_ / m;
        std::size_t hits = 0;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) hits += contains(center_ + Point(-r2_ + (i + 0.5) * h, -r2_ + (j + 0.5) * h));
        return static_cast<double>(hits) * h * h;
      }
    }
    return 0.0;
  }

  struct BoundaryPoint {
    Point z;
    Point normal;  // unit, pointing out of the region
  };

  /// n points spread along the boundary by arc length (unions: only the
  /// parts of each boundary not covered by another part).
  std::vector<BoundaryPoint> boundary(std::size_t n) const {
    std::vector<BoundaryPoint> out;
    if (n == 0) return out;
    switch (kind_) {
      case Kind::Disk:
        for (std::size_t i = 0; i < n; ++i) {
          const Point u = std::polar(1.0, 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
          out.push_back({center_ + r2_ * u, u});
        }
        break;
      case Kind::Annulus: {
        const auto inner = static_cast<std::size_t>(std::llround(static_cast<double>(n) * r1_ / (r1_ + r2_)));
        for (std::size_t i = 0; i < n - inner; ++i) {
          const Point u = std::polar(1.0, 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n - inner));
          out.push_back({r2_ * u, u});
        }
        for (std::size_t i = 0; i < inner; ++i) {
          const Point u = std::polar(1.0, 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(inner));
          out.push_back({r1_ * u, -u});
        }
        break;
      }
      case Kind::ConvexPolygon: {
        double perimeter = 0.0;
        for (std::size_t i = 0; i < vertices_.size(); ++i) perimeter += std::abs(vertices_[(i + 1) % vertices_.size()] - vertices_[i]);
        std::size_t edge = 0;
        double start = 0.0;  // arc length at the start of `edge`
        for (std::size_t i = 0; i < n; ++i) {
          const double s = perimeter * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
          Point a = vertices_[edge], b = vertices_[(edge + 1) % vertices_.size()];
          while (s > start + std::abs(b - a) && edge + 1 < vertices_.size()) {
            start += std::abs(b - a);
            ++edge;
            a = vertices_[edge];
            b = vertices_[(edge + 1) % vertices_.size()];
          }
          const Point t = (b - a) / std::abs(b - a);
          out.push_back({a + t * (s - start), Point(t.imag(), -t.real())});
        }
        break;
      }
      case Kind::Union: {
        // oversample each part, keep exposed points, then thin to n
        std::vector<BoundaryPoint> exposed;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
          for (const auto& b : parts_[i].boundary(8 * n)) {
            bool covered = false;
            for (std::size_t j = 0; j < parts_.size() && !covered; ++j)
              covered = j != i && parts_[j].contains(b.z + 1e-9 * b.normal);
            if (!covered) exposed.push_back(b);
          }
        }
        for (std::size_t i = 0; i < n && !exposed.empty(); ++i)
          out.push_back(exposed[i * exposed.size() / n]);
        break;
      }
    }
    return out;
  }

 private:
  explicit HoleRegion(Kind k) : kind_(k) {}
  static double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }

  Kind kind_;
  Point center_ = 0.0;
  double r1_ = 0.0, r2_ = 0.0;
  std::vector<Point> vertices_;
  std::vector<HoleRegion> parts_;
};

}  // namespace holelab

#ifndef CURVECTRL_MESH_HPP
#define CURVECTRL_MESH_HPP

#include <array>
#include <iosfwd>
#include <memory>
#include <vector>

#include "curvectrl/geometry.hpp"

namespace curvectrl {

// Conforming triangulation of a convex polygonal domain. Triangles are
// counterclockwise vertex-index triples; vertices on the boundary carry no
// interior DOF number. Immutable after construction; all queries re-entrant.
class Mesh {
 public:
  Mesh(std::vector<Point2> vertices, std::vector<std::array<int, 3>> triangles);

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_triangles() const { return static_cast<int>(triangles_.size()); }
  int n_interior() const { return n_interior_; }

  Point2 vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
  bool on_boundary(int v) const { return boundary_flag_[v] != 0; }
  // Interior-DOF number of vertex v, or -1 on the boundary.
  int interior_index(int v) const { return interior_index_[v]; }
  // Inverse of interior_index on 0..n_interior-1.
  int interior_vertex(int dof) const { return interior_vertices_[dof]; }

  double max_edge_length() const { return h_; }   // mesh size h
  double triangle_area(int t) const { return area_[t]; }
  double total_area() const { return total_area_; }

  std::array<Point2, 3> triangle_points(int t) const {
    const auto& tri = triangles_[t];
    return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
  }
  Point2 centroid(int t) const {
    auto p = triangle_points(t);
    return {(p[0].x + p[1].x + p[2].x) / 3.0, (p[0].y + p[1].y + p[2].y) / 3.0};
  }

  struct Location {
    int triangle;
    std::array<double, 3> barycentric;
  };

  // Containing triangle of x and its barycentric coordinates. Points on
  // shared edges/vertices resolve to the containing triangle of lowest
  // index. Throws PointOutsideDomain beyond a 1e-12 tolerance.
  Location locate_point(Point2 x) const;

 private:
  std::vector<Point2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<char> boundary_flag_;
  std::vector<int> interior_index_;
  std::vector<int> interior_vertices_;
  std::vector<double> area_;
  double h_ = 0.0;
  double total_area_ = 0.0;
  int n_interior_ = 0;

  // Uniform-grid bucket acceleration for point location, built lazily.
  struct Buckets;
  mutable std::shared_ptr<const Buckets> buckets_;
  const Buckets& buckets() const;
  bool triangle_contains(int t, Point2 x, std::array<double, 3>& lambda) const;
};

// Unit square split into n x n cells, each cut into two triangles by the
// same diagonal; h = sqrt(2)/n. Throws std::invalid_argument for n < 1.
Mesh build_uniform_square(int n);

// Quadrisect every triangle via edge midpoints; h halves exactly and parent
// vertices keep their indices and coordinates.
Mesh refine_uniform(const Mesh& mesh);

// Structural conformity: any two triangles share nothing, one vertex, or a
// full edge (each edge used by at most two triangles, with opposite
// orientation when shared).
bool is_conforming(const Mesh& mesh);

// Plain-text format: "mesh v1 <n_vertices> <n_triangles>", vertex lines
// "x y boundary_flag", triangle lines "i j k" (0-based).
void write_mesh(std::ostream& out, const Mesh& mesh);
Mesh read_mesh(std::istream& in);

}  // namespace curvectrl

#endif

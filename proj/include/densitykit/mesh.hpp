#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "densitykit/analytic.hpp"
#include "densitykit/curve.hpp"
#include "densitykit/geometry.hpp"

namespace densitykit {

using Face = std::array<int, 3>;
using UV = std::array<double, 2>;

struct SurfaceOptions {
  /// Parameter-domain coordinates per vertex (required with a patch).
  std::vector<UV> uv;
  std::shared_ptr<const AnalyticPatch> patch;
  /// Run the O(k^2) simplicity test on every boundary loop. Auxiliary
  /// surfaces such as exterior cones may switch this off.
  bool check_boundary_simple = true;
};

/// Triangle mesh with boundary, optionally backed by the analytic immersion
/// it samples. Immutable after construction.
class SurfaceModel {
 public:
  SurfaceModel(std::vector<PointN> vertices, std::vector<Face> faces, SurfaceOptions opts = {})
      : vertices_(std::move(vertices)), faces_(std::move(faces)), uv_(std::move(opts.uv)), patch_(std::move(opts.patch)) {
    dim_ = common_dimension(vertices_, "mesh");
    require(!faces_.empty(), ErrorKind::construction, "mesh has no faces");
    const int nv = static_cast<int>(vertices_.size());
    for (size_t f = 0; f < faces_.size(); ++f) {
      const Face& t = faces_[f];
      for (int k = 0; k < 3; ++k)
        require(t[k] >= 0 && t[k] < nv, ErrorKind::construction, "face " + std::to_string(f) + " has a bad vertex index");
      require(t[0] != t[1] && t[1] != t[2] && t[0] != t[2], ErrorKind::construction,
              "face " + std::to_string(f) + " repeats a vertex");
    }
    if (patch_) {
      require(uv_.size() == vertices_.size(), ErrorKind::construction, "analytic surface needs one uv per vertex");
      require(patch_->dimension() == dim_, ErrorKind::construction, "patch and mesh dimensions differ");
    } else {
      require(uv_.empty() || uv_.size() == vertices_.size(), ErrorKind::construction, "uv count mismatch");
    }
    build_adjacency();
    orient();
    check_vertex_manifold();
    extract_boundary_loops();
    if (opts.check_boundary_simple)
      for (size_t l = 0; l < loops_.size(); ++l) (void)boundary_curve(static_cast<int>(l));
    compute_areas();
  }

  int dim() const noexcept { return dim_; }
  int vertex_count() const noexcept { return static_cast<int>(vertices_.size()); }
  int face_count() const noexcept { return static_cast<int>(faces_.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<PointN>& vertices() const noexcept { return vertices_; }
  const PointN& vertex(int i) const { return vertices_[i]; }
  const std::vector<Face>& faces() const noexcept { return faces_; }
  const Face& face(int f) const { return faces_[f]; }
  const std::vector<UV>& uv() const noexcept { return uv_; }
  const std::shared_ptr<const AnalyticPatch>& patch() const noexcept { return patch_; }
  bool has_source() const noexcept { return static_cast<bool>(patch_); }
  bool orientable() const noexcept { return orientable_; }

  const std::vector<std::vector<int>>& boundary_loops() const noexcept { return loops_; }
  bool is_boundary_vertex(int v) const { return boundary_vertex_[v]; }
  const std::vector<double>& per_vertex_area() const noexcept { return vertex_area_; }
  double face_area(int f) const { return face_area_[f]; }
  double total_area() const noexcept { return total_area_; }
  int degenerate_face_count() const noexcept { return degenerate_faces_; }

  Triangle triangle(int f) const {
    const Face& t = faces_[f];
    return Triangle(vertices_[t[0]], vertices_[t[1]], vertices_[t[2]]);
  }

  /// Faces incident to vertex v.
  std::span<const int> vertex_faces(int v) const {
    return {vf_index_.data() + vf_offset_[v], static_cast<size_t>(vf_offset_[v + 1] - vf_offset_[v])};
  }

  /// Neighbouring vertices of v (unordered, unique).
  std::vector<int> vertex_neighbors(int v) const {
    std::vector<int> out;
    for (int f : vertex_faces(v))
      for (int k = 0; k < 3; ++k)
        if (faces_[f][k] != v) out.push_back(faces_[f][k]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// Culling sphere of a face: centroid and max distance to its corners.
  const PointN& face_center(int f) const { return face_center_[f]; }
  double face_radius(int f) const { return face_radius_[f]; }

  /// Boundary loop l as a closed polyline. Corners are attached by the caller.
  PolylineCurve boundary_curve(int l, std::vector<CornerFlag> corners = {}) const {
    std::vector<PointN> pts;
    for (int v : loops_.at(l)) pts.push_back(vertices_[v]);
    return PolylineCurve(std::move(pts), true, std::move(corners));
  }

  /// Euler characteristic V - E + F.
  int euler_characteristic() const noexcept { return vertex_count() - edge_count() + face_count(); }

  /// Genus of an orientable surface with b boundary loops: (2 - chi - b) / 2.
  int genus() const {
    require(orientable_, ErrorKind::unsupported, "genus of a non-orientable mesh");
    const int twice = 2 - euler_characteristic() - static_cast<int>(loops_.size());
    return twice / 2;
  }

  /// Parameter coordinates of the point with barycentric coords b in face f.
  UV face_uv(int f, const Bary& b) const {
    const Face& t = faces_[f];
    return {b[0] * uv_[t[0]][0] + b[1] * uv_[t[1]][0] + b[2] * uv_[t[2]][0],
            b[0] * uv_[t[0]][1] + b[1] * uv_[t[1]][1] + b[2] * uv_[t[2]][1]};
  }

 private:
  static std::uint64_t edge_key(int a, int b) noexcept {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  }

  struct EdgeUse {
    std::array<int, 2> face{-1, -1};
    int count = 0;
  };

  void build_adjacency() {
    edges_.reserve(faces_.size() * 2);
    for (int f = 0; f < face_count(); ++f)
      for (int k = 0; k < 3; ++k) {
        EdgeUse& e = edges_[edge_key(faces_[f][k], faces_[f][(k + 1) % 3])];
        require(e.count < 2, ErrorKind::construction, "non-manifold edge (more than two faces)");
        e.face[e.count++] = f;
      }
    const int nv = vertex_count();
    vf_offset_.assign(nv + 1, 0);
    for (const Face& t : faces_)
      for (int v : t) ++vf_offset_[v + 1];
    std::partial_sum(vf_offset_.begin(), vf_offset_.end(), vf_offset_.begin());
    vf_index_.assign(vf_offset_.back(), 0);
    std::vector<int> fill(vf_offset_.begin(), vf_offset_.end() - 1);
    for (int f = 0; f < face_count(); ++f)
      for (int v : faces_[f]) vf_index_[fill[v]++] = f;
    for (int v = 0; v < nv; ++v)
      require(vf_offset_[v + 1] > vf_offset_[v], ErrorKind::construction,
              "vertex " + std::to_string(v) + " is not used by any face");
  }

  static bool has_directed(const Face& t, int a, int b) noexcept {
    for (int k = 0; k < 3; ++k)
      if (t[k] == a && t[(k + 1) % 3] == b) return true;
    return false;
  }

  /// Breadth-first propagation of a consistent orientation; a conflict marks
  /// the mesh non-orientable and leaves the input orientation untouched.
  void orient() {
    std::vector<Face> faces = faces_;
    std::vector<char> seen(faces.size(), 0);
    orientable_ = true;
    for (size_t seed = 0; seed < faces.size() && orientable_; ++seed) {
      if (seen[seed]) continue;
      seen[seed] = 1;
      std::queue<int> q;
      q.push(static_cast<int>(seed));
      while (!q.empty() && orientable_) {
        const int f = q.front();
        q.pop();
        for (int k = 0; k < 3; ++k) {
          const int a = faces[f][k], b = faces[f][(k + 1) % 3];
          const EdgeUse& e = edges_.at(edge_key(a, b));
          if (e.count < 2) continue;
          const int g = e.face[0] == f ? e.face[1] : e.face[0];
          const bool consistent = has_directed(faces[g], b, a);
          if (!seen[g]) {
            if (!consistent) std::swap(faces[g][1], faces[g][2]);
            seen[g] = 1;
            q.push(g);
          } else if (!consistent) {
            orientable_ = false;
          }
        }
      }
    }
    if (orientable_) faces_ = std::move(faces);
  }

  void check_vertex_manifold() {
    boundary_vertex_.assign(vertex_count(), 0);
    std::vector<int> boundary_degree(vertex_count(), 0);
    for (const auto& [key, e] : edges_)
      if (e.count == 1) {
        const int a = static_cast<int>(key >> 32), b = static_cast<int>(key & 0xffffffffu);
        ++boundary_degree[a];
        ++boundary_degree[b];
      }
    for (int v = 0; v < vertex_count(); ++v) {
      require(boundary_degree[v] == 0 || boundary_degree[v] == 2, ErrorKind::construction,
              "vertex " + std::to_string(v) + " is not a manifold vertex");
      boundary_vertex_[v] = boundary_degree[v] == 2;
      // The incident faces must form one fan connected through edges at v.
      const auto star = vertex_faces(v);
      std::vector<int> comp(star.size());
      std::iota(comp.begin(), comp.end(), 0);
      const auto find = [&](int i) {
        while (comp[i] != i) i = comp[i] = comp[comp[i]];
        return i;
      };
      for (size_t i = 0; i < star.size(); ++i)
        for (size_t j = i + 1; j < star.size(); ++j) {
          int shared = 0;
          for (int x : faces_[star[i]])
            for (int y : faces_[star[j]]) shared += (x == y);
          if (shared >= 2) comp[find(static_cast<int>(i))] = find(static_cast<int>(j));
        }
      int roots = 0;
      for (size_t i = 0; i < star.size(); ++i) roots += find(static_cast<int>(i)) == static_cast<int>(i);
      require(roots == 1, ErrorKind::construction, "vertex " + std::to_string(v) + " has a disconnected fan");
    }
  }

  void extract_boundary_loops() {
    // Directed boundary edge a->b as it appears in its face.
    std::unordered_map<int, int> next;
    for (int f = 0; f < face_count(); ++f)
      for (int k = 0; k < 3; ++k) {
        const int a = faces_[f][k], b = faces_[f][(k + 1) % 3];
        if (edges_.at(edge_key(a, b)).count == 1) next[a] = b;
      }
    std::vector<char> used(vertex_count(), 0);
    std::vector<int> starts;
    for (const auto& [a, b] : next) starts.push_back(a);
    std::sort(starts.begin(), starts.end());
    for (int s : starts) {
      if (used[s]) continue;
      std::vector<int> loop;
      int v = s;
      do {
        require(!used[v], ErrorKind::construction, "boundary is not a union of simple loops");
        used[v] = 1;
        loop.push_back(v);
        auto it = next.find(v);
        require(it != next.end(), ErrorKind::construction, "open boundary chain");
        v = it->second;
      } while (v != s);
      loops_.push_back(std::move(loop));
    }
  }

  void compute_areas() {
    face_area_.resize(faces_.size());
    face_center_.resize(faces_.size());
    face_radius_.resize(faces_.size());
    vertex_area_.assign(vertex_count(), 0.0);
    std::vector<CompensatedSum> vsum(vertex_count());
    CompensatedSum total;
    for (int f = 0; f < face_count(); ++f) {
      const Triangle t = triangle(f);
      const double a = triangle_area(t);
      if (a == 0.0) ++degenerate_faces_;
      face_area_[f] = a;
      total += a;
      for (int v : faces_[f]) vsum[v] += a / 3.0;
      face_center_[f] = t.centroid();
      double rad = 0.0;
      for (const auto& p : t.v) rad = std::max(rad, distance(p, face_center_[f]));
      face_radius_[f] = rad;
    }
    for (int v = 0; v < vertex_count(); ++v) vertex_area_[v] = vsum[v].value();
    total_area_ = total.value();
  }

  int dim_ = 0;
  std::vector<PointN> vertices_;
  std::vector<Face> faces_;
  std::vector<UV> uv_;
  std::shared_ptr<const AnalyticPatch> patch_;

  std::unordered_map<std::uint64_t, EdgeUse> edges_;
  std::vector<int> vf_offset_, vf_index_;
  std::vector<char> boundary_vertex_;
  std::vector<std::vector<int>> loops_;
  bool orientable_ = true;

  std::vector<double> face_area_, vertex_area_, face_radius_;
  std::vector<PointN> face_center_;
  double total_area_ = 0.0;
  int degenerate_faces_ = 0;
};

}  // namespace densitykit

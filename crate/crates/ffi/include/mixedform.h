#ifndef MIXEDFORM_H
#define MIXEDFORM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result of a call. Values other than `MF_OK` come with a message from
// `mf_last_error_message`.
typedef enum MfStatus {
  MF_OK = 0,
  MF_NULL_POINTER = 1,
  MF_INVALID_INPUT = 2,
  MF_DOMAIN = 3,
  MF_STRUCTURAL = 4,
  MF_UNBOUNDED = 5,
  MF_REDUNDANT = 6,
  MF_FLIP_NOT_ADMISSIBLE = 7,
  MF_CONSISTENCY = 8,
  MF_CONTRACT = 9,
  MF_INCONSISTENCY = 10,
  MF_FALSIFIED = 11,
  MF_PARSE = 12,
  MF_PANIC = 13,
} MfStatus;

// Closed flat cone surface glued from triangles.
typedef struct MfMesh MfMesh;

// Convex polygon normal fan.
typedef struct MfPolygonFan MfPolygonFan;

// Normal fan of a convex 3-polytope.
typedef struct MfPolytopeFan MfPolytopeFan;

// Quotient data of a Fuchsian polyhedron.
typedef struct MfQuotientFan MfQuotientFan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer is
// valid until the next failing call on the same thread.
const char *mf_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *mf_version(void);

// Builds a polygon fan from `n` outward normal angles in degrees, listed
// counterclockwise.
enum MfStatus mf_polygon_fan_new_degrees(const double *degrees,
                                         size_t n,
                                         struct MfPolygonFan **fan);

void mf_polygon_fan_free(struct MfPolygonFan *fan);

// Number of edges, 0 for NULL.
size_t mf_polygon_fan_len(const struct MfPolygonFan *fan);

// Edge lengths of the polygon with support numbers `h`; `h` and `lengths`
// hold `n` values.
enum MfStatus mf_polygon_edge_lengths(const struct MfPolygonFan *fan,
                                      const double *h,
                                      size_t n,
                                      double *lengths);

// Area form as a row-major `n×n` matrix.
enum MfStatus mf_polygon_area_form(const struct MfPolygonFan *fan, double *matrix);

// `(positive, zero, negative)` eigenvalue counts of the area form.
// A non-positive `zero_threshold` selects the default.
enum MfStatus mf_polygon_signature(const struct MfPolygonFan *fan,
                                   double zero_threshold,
                                   size_t *signature);

// Mixed area of the polygons with support numbers `h` and `k`.
enum MfStatus mf_polygon_mixed_area(const struct MfPolygonFan *fan,
                                    const double *h,
                                    const double *k,
                                    size_t n,
                                    double *value);

// Minkowski inequality: writes `b(h,k)² − q(h)q(k)` and its scale, and
// whether the inequality holds within tolerance.
enum MfStatus mf_polygon_minkowski(const struct MfPolygonFan *fan,
                                   const double *h,
                                   const double *k,
                                   size_t n,
                                   double *residual,
                                   double *scale,
                                   bool *holds);

// Intersects the halfspaces `⟨x, normals[i]⟩ ≤ h[i]`; `normals` holds `3m`
// coordinates.
enum MfStatus mf_polytope_fan_build(const double *normals,
                                    const double *h,
                                    size_t m,
                                    struct MfPolytopeFan **fan);

void mf_polytope_fan_free(struct MfPolytopeFan *fan);

// Number of faces, 0 for NULL.
size_t mf_polytope_fan_len(const struct MfPolytopeFan *fan);

// Number of vertices, 0 for NULL.
size_t mf_polytope_vertex_count(const struct MfPolytopeFan *fan);

// True when every vertex lies on exactly three faces.
bool mf_polytope_is_simple(const struct MfPolytopeFan *fan);

enum MfStatus mf_polytope_volume(const struct MfPolytopeFan *fan,
                                 const double *h,
                                 size_t m,
                                 double *value);

enum MfStatus mf_polytope_boundary_area(const struct MfPolytopeFan *fan,
                                        const double *h,
                                        size_t m,
                                        double *value);

// Boundary area form as a row-major `m×m` matrix.
enum MfStatus mf_polytope_area_form(const struct MfPolytopeFan *fan, double *matrix);

// `(positive, zero, negative)` eigenvalue counts of the boundary area form.
enum MfStatus mf_polytope_signature(const struct MfPolytopeFan *fan,
                                    double zero_threshold,
                                    size_t *signature);

// Mixed volume `v(h, k, p)`.
enum MfStatus mf_polytope_mixed_volume(const struct MfPolytopeFan *fan,
                                       const double *h,
                                       const double *k,
                                       const double *p,
                                       size_t m,
                                       double *value);

// Boundary area as a quadrature over the sphere at the given refinement
// depth.
enum MfStatus mf_polytope_sphere_area(const struct MfPolytopeFan *fan,
                                      const double *h,
                                      size_t m,
                                      uint32_t depth,
                                      double *value);

// Parses quotient fan JSON (`{"genus", "faces": [{"adjacencies": [...]}]}`).
enum MfStatus mf_quotient_fan_from_json(const char *json, struct MfQuotientFan **fan);

void mf_quotient_fan_free(struct MfQuotientFan *fan);

// Number of face classes, 0 for NULL.
size_t mf_quotient_fan_len(const struct MfQuotientFan *fan);

enum MfStatus mf_fuchsian_covolume(const struct MfQuotientFan *fan,
                                   const double *h,
                                   size_t m,
                                   double *value);

// Covolume Hessian at `h` as a row-major `m×m` matrix.
enum MfStatus mf_fuchsian_covolume_hessian(const struct MfQuotientFan *fan,
                                           const double *h,
                                           size_t m,
                                           double *matrix);

// Area form as a row-major `m×m` matrix. Returns `MF_FALSIFIED` (and
// leaves `matrix` untouched) when the form is not positive definite.
enum MfStatus mf_fuchsian_area_form(const struct MfQuotientFan *fan, double *matrix);

// Spherical distance between the homothety classes of `h` and `k`.
enum MfStatus mf_fuchsian_spherical_distance(const struct MfQuotientFan *fan,
                                             const double *h,
                                             const double *k,
                                             size_t m,
                                             double *value);

// Builds a mesh from `f` triangles (`3f` lengths, edge `e` joining corners
// `e` and `e+1`) and `g` gluing records `(t, e, t', e')` (`4g` values).
enum MfStatus mf_mesh_new(const double *lengths,
                          size_t f,
                          const size_t *gluing,
                          size_t g,
                          struct MfMesh **mesh);

// Parses mesh JSON (`{"triangles": [{"lengths": [..]}], "gluing": [[t,e,t',e']]}`).
enum MfStatus mf_mesh_from_json(const char *json, struct MfMesh **mesh);

void mf_mesh_free(struct MfMesh *mesh);

// Number of vertices, 0 for NULL.
size_t mf_mesh_vertex_count(const struct MfMesh *mesh);

enum MfStatus mf_mesh_total_area(const struct MfMesh *mesh, double *value);

// Genus and per-vertex curvatures (`mf_mesh_vertex_count` values).
enum MfStatus mf_mesh_cone_data(const struct MfMesh *mesh, size_t *genus, double *curvatures);

// Flips edge `e` of triangle `t` into a new mesh; the new diagonal is
// edge 1 of triangle `t`.
enum MfStatus mf_mesh_flip(const struct MfMesh *mesh, size_t t, size_t e, struct MfMesh **flipped);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIXEDFORM_H */

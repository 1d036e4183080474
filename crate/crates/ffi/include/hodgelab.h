#ifndef HODGELAB_H
#define HODGELAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes; zero is success.
 */
typedef enum HlStatus {
  HL_STATUS_OK = 0,
  HL_STATUS_NULL_POINTER = 1,
  HL_STATUS_INVALID_ARGUMENT = 2,
  HL_STATUS_LEVEL_TOO_HIGH = 3,
  HL_STATUS_INVALID_MESH = 4,
  HL_STATUS_NON_POSITIVE_MASS = 5,
  HL_STATUS_NO_CONVERGENCE = 6,
  HL_STATUS_CONFIG = 7,
  HL_STATUS_PANIC = 8,
  HL_STATUS_INTERNAL = 9,
} HlStatus;

/**
 * Opaque surface mesh.
 */
typedef struct HlMesh HlMesh;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a subdivided icosphere of the given radius.
 */
enum HlStatus hl_mesh_icosphere(uint32_t level, double radius, struct HlMesh **out);

/**
 * Builds the spheroid `(x² + y²)/a² + z²/c² = 1`.
 */
enum HlStatus hl_mesh_spheroid(uint32_t level, double a, double c, struct HlMesh **out);

/**
 * Releases a mesh; null is ignored.
 *
 * # Safety
 * `mesh` must come from a mesh constructor and not be freed twice.
 */
void hl_mesh_free(struct HlMesh *mesh);

/**
 * Writes vertex, edge and face counts.
 *
 * # Safety
 * `mesh` must be a live handle; output pointers must be valid or null.
 */
enum HlStatus hl_mesh_counts(const struct HlMesh *mesh,
                             size_t *vertices,
                             size_t *edges,
                             size_t *faces);

/**
 * Copies vertex coordinates as `x0 y0 z0 x1 ...` into `out`, which must
 * hold `3 * vertices` doubles.
 *
 * # Safety
 * `out` must point to `len` writable doubles.
 */
enum HlStatus hl_mesh_vertices(const struct HlMesh *mesh, double *out, size_t len);

/**
 * Curvature extrema `rho`, `P` and the angle-defect total.
 *
 * # Safety
 * `mesh` must be a live handle; output pointers must be valid or null.
 */
enum HlStatus hl_mesh_curvature(const struct HlMesh *mesh,
                                double *rho,
                                double *p_max,
                                double *defect_sum);

/**
 * Lowest `count` eigenvalues of the Hodge Laplacian on `form`-forms
 * (0 or 1), ascending, with their relative residuals. `residuals` may be
 * null. `tol <= 0` selects the default solver tolerance.
 *
 * # Safety
 * `eigenvalues` (and `residuals` when non-null) must hold `count` doubles.
 */
enum HlStatus hl_spectrum(const struct HlMesh *mesh,
                          uint8_t form,
                          size_t count,
                          uint64_t seed,
                          double tol,
                          double *eigenvalues,
                          double *residuals);

/**
 * Runs the verification suite on the handle's surface and returns the
 * JSON report. `config_json` may be null for defaults; its surface is
 * replaced by the mesh's. `passed` (optional) receives the overall verdict.
 *
 * # Safety
 * `config_json` must be null or NUL-terminated UTF-8; `out_json` must be
 * valid. Free the result with [`hl_string_free`].
 */
enum HlStatus hl_verify(const struct HlMesh *mesh,
                        const char *config_json,
                        char **out_json,
                        bool *passed);

/**
 * Releases a string returned by the library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void hl_string_free(char *s);

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next library call on the same thread.
 */
const char *hl_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *hl_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HODGELAB_H */

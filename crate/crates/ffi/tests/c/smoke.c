#include <stdio.h>
#include <string.h>
#include "hodgelab.h"

int main(void) {
    HlMesh *mesh = NULL;
    if (hl_mesh_icosphere(2, 1.0, &mesh) != HL_STATUS_OK) {
        fprintf(stderr, "build failed: %s\n", hl_last_error());
        return 1;
    }
    size_t v = 0, e = 0, f = 0;
    hl_mesh_counts(mesh, &v, &e, &f);
    double ev[4];
    if (hl_spectrum(mesh, 0, 4, 1, 0.0, ev, NULL) != HL_STATUS_OK) {
        fprintf(stderr, "spectrum failed: %s\n", hl_last_error());
        return 1;
    }
    printf("V=%zu E=%zu F=%zu lambda1=%.4f\n", v, e, f, ev[1]);
    hl_mesh_free(mesh);
    if (hl_mesh_icosphere(9, 1.0, &mesh) != HL_STATUS_LEVEL_TOO_HIGH || hl_last_error() == NULL) {
        return 1;
    }
    return 0;
}

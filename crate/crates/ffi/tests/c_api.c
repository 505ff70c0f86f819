#include <stdio.h>
#include <string.h>
#include "keller.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s\n", #cond); return 1; } } while (0)

int main(void) {
    KellerRing *ring = NULL;
    CHECK(keller_ring_new("x,y", &ring) == KELLER_STATUS_OK);
    CHECK(keller_ring_nvars(ring) == 2);

    KellerPoly *f1 = NULL, *f2 = NULL, *bad = NULL;
    CHECK(keller_poly_parse(ring, "x + y^2", &f1) == KELLER_STATUS_OK);
    CHECK(keller_poly_parse(ring, "y", &f2) == KELLER_STATUS_OK);
    CHECK(keller_poly_parse(ring, "x +* y", &bad) == KELLER_STATUS_PARSE_ERROR);
    CHECK(strstr(keller_last_error(), "byte") != NULL);

    const KellerPoly *map[2] = {f1, f2};
    bool keller = false;
    CHECK(keller_is_keller(map, 2, &keller) == KELLER_STATUS_OK && keller);

    char *text = NULL;
    CHECK(keller_poly_to_string(f1, &text) == KELLER_STATUS_OK);
    CHECK(strcmp(text, "y^2 + x") == 0);
    keller_string_free(text);

    keller_poly_free(f1);
    keller_poly_free(f2);
    keller_ring_free(ring);
    puts("ok");
    return 0;
}

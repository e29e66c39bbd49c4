#include <stdio.h>
#include <string.h>
#include "branchzeta.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,   \
                    #cond, bz_last_error());                          \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    const uint64_t gens[] = {4, 6, 13};
    BzBranch *b = NULL;
    CHECK(bz_branch_new(gens, 3, &b) == BZ_STATUS_OK);
    CHECK(bz_branch_conductor(b) == 16);

    BzCyclo *p = NULL;
    char *s = NULL;
    CHECK(bz_branch_invariant(b, BZ_INVARIANT_POINCARE, &p) == BZ_STATUS_OK);
    CHECK(bz_cyclo_to_string(p, &s) == BZ_STATUS_OK);
    CHECK(strcmp(s, "(1-T^12)(1-T^26)/((1-T^4)(1-T^6)(1-T^13))") == 0);
    bz_string_free(s);
    bz_cyclo_free(p);

    bool holds = false;
    CHECK(bz_branch_verify(b, BZ_CHECK_CDG, &holds) == BZ_STATUS_OK && holds);
    bz_branch_free(b);

    const uint64_t bad[] = {4, 6, 9};
    CHECK(bz_branch_new(bad, 3, &b) == BZ_STATUS_ORDER_VIOLATION);
    CHECK(strlen(bz_last_error()) > 0);
    puts("ok");
    return 0;
}

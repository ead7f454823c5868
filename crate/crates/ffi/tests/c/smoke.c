#include <stdio.h>
#include <string.h>

#include "parity_lab.h"

static int fail(const char *what) {
    const char *msg = pl_last_error();
    fprintf(stderr, "%s: %s\n", what, msg ? msg : "(no message)");
    return 1;
}

int main(void) {
    PlPoly *p = NULL;
    if (pl_poly_parse("z^2 + 2*z", &p) != PL_STATUS_OK) return fail("parse");

    PlCase c;
    char *witness = NULL;
    if (pl_poly_classify_rpe(p, &c, &witness) != PL_STATUS_OK) return fail("classify");
    if (c != PL_CASE_C || witness == NULL) return fail("case");
    printf("case C, witness %s\n", witness);
    if (strcmp(witness, "cos(2*pi*sqrt(z + 1))") != 0) return fail("witness text");
    pl_string_free(witness);

    PlPoly *cube = NULL;
    bool cyclic = true;
    uint64_t k = 99;
    if (pl_poly_parse("(z+1)^3", &cube) != PL_STATUS_OK) return fail("parse cube");
    if (pl_poly_right_cyclic(cube, 3, &cyclic, &k) != PL_STATUS_OK) return fail("right cyclic");
    if (cyclic) return fail("cube should not be right cyclic");

    PlPoly *bad = NULL;
    if (pl_poly_parse("z**2", &bad) != PL_STATUS_PARSE_ERROR) return fail("bad input accepted");
    printf("parse error: %s\n", pl_last_error());

    PlRational *f = NULL, *ff = NULL;
    if (pl_rational_parse("z/(z-1)", &f) != PL_STATUS_OK) return fail("parse rational");
    if (pl_rational_compose(f, f, &ff) != PL_STATUS_OK) return fail("compose rational");
    char *text = pl_rational_to_string(ff);
    printf("f∘f = %s\n", text);
    if (strcmp(text, "(z) / (1)") != 0) return fail("rational composition");
    pl_string_free(text);

    const char *argv[] = {"parity-lab", "right-cyclic", "(z+1)^3", "--modulus", "3"};
    char *out = NULL, *err = NULL;
    int code = pl_run_command(5, argv, &out, &err);
    printf("exit %d\n%s", code, out);
    if (code != 0) return fail("run command");
    pl_string_free(out);
    pl_string_free(err);

    pl_rational_free(ff);
    pl_rational_free(f);
    pl_poly_free(cube);
    pl_poly_free(p);
    puts("ok");
    return 0;
}

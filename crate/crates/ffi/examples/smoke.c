/* Completes a one-block (7,3) design through the C interface. */
#include <stdio.h>
#include <string.h>

#include "kdesign.h"

int main(void) {
    KdDesign *d = NULL;
    char *out = NULL;

    if (kd_design_from_json("{\"n\":7,\"k\":3,\"blocks\":[[0,1,2]]}", &d) != KdStatus_Ok) {
        fprintf(stderr, "parse: %s\n", kd_last_error());
        return 1;
    }
    KdStatus st = kd_complete_design(d, 1000000, 1, &out);
    kd_design_free(d);
    if (st != KdStatus_Ok) {
        fprintf(stderr, "complete: %d\n", (int)st);
        return 1;
    }
    int ok = strstr(out, "\"completed\"") != NULL;
    puts(out);
    kd_string_free(out);

    if (kd_design_from_json("not json", &d) != KdStatus_Invalid || kd_last_error() == NULL) {
        return 1;
    }
    return ok ? 0 : 1;
}

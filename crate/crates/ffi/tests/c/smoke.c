#include <stdio.h>
#include <string.h>

#include "tjkss.h"

static const char *TREFOIL =
    "crossing 1 +\ncrossing 2 +\n"
    "edge 1.0 2.0\nedge 1.1 2.1\nedge 2.0 1.1\nedge 2.1 1.0\n";

int main(void) {
    TjkssDiagram *d = NULL;
    char *value = NULL;

    if (tjkss_diagram_parse(TREFOIL, &d) != TJKSS_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", tjkss_last_error());
        return 1;
    }
    if (tjkss_jkss(d, true, &value) != TJKSS_STATUS_OK) {
        fprintf(stderr, "jkss: %s\n", tjkss_last_error());
        return 1;
    }
    printf("%s\n", value);
    tjkss_string_free(value);

    if (tjkss_diagram_parse("crossing 1 +\n", &d) != TJKSS_STATUS_INVALID_DIAGRAM) {
        return 1;
    }
    if (strlen(tjkss_last_error()) == 0) {
        return 1;
    }
    tjkss_diagram_free(d);
    return 0;
}

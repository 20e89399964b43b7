#include <stdio.h>
#include <string.h>
#include "fvknot.h"

int main(int argc, char **argv) {
    const char *w = "components: 1\n1+ 2- 4f 4f 2+ 1- 3f 3f\ncrossings:\n1 C +1\n2 C +1\n3 F +1\n4 F +1\n";
    FvkDiagram *d = NULL;
    if (fvk_diagram_parse(w, &d) != FVK_STATUS_OK) return 10;
    char *x = NULL;
    if (fvk_diagram_invariant(d, 24, 2, &x) != FVK_STATUS_OK) return 11;
    printf("%s\n", x);
    fvk_string_free(x);
    int32_t writhe = 0;
    fvk_diagram_writhe(d, &writhe);
    printf("%d\n", writhe);
    fvk_diagram_free(d);
    FvkDiagram *bad = NULL;
    FvkStatus s = fvk_diagram_parse("components: 1\n1x\n", &bad);
    printf("%d %s\n", (int)s, fvk_last_error() ? "message" : "none");
    return bad == NULL ? 0 : 12;
}

#include <stdio.h>
#include <string.h>

#include "strandnet.h"

static const char *INPUT =
    "length a = 10\n"
    "length b = 10\n"
    "T = a b\n"
    "B = b* a*\n";

int main(void) {
    SnNetwork *net = NULL;
    if (sn_network_build(INPUT, true, &net) != SN_STATUS_OK) {
        fprintf(stderr, "build failed: %s\n", sn_last_error());
        return 1;
    }
    char *crn = NULL;
    if (sn_network_render(net, SN_FORMAT_CRN, true, &crn) != SN_STATUS_OK) {
        sn_network_free(net);
        return 1;
    }
    printf("%zu %zu\n%s", sn_network_complex_count(net), sn_network_reaction_count(net), crn);
    sn_string_free(crn);
    sn_network_free(net);

    SnNetwork *bad = NULL;
    SnStatus s = sn_network_build("length a = 10\nX = a(\n", false, &bad);
    printf("%d %d %s\n", (int)s, bad == NULL, sn_last_error());
    return 0;
}

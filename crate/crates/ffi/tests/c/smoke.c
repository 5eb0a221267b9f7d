#include <stdio.h>
#include <string.h>
#include "trivalent.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (%s)\n", #cond, tvl_last_error_message()); return 1; } } while (0)

int main(void) {
    TvlScheme *sk = NULL;
    CHECK(tvl_scheme_parse("NEG:0n1;AND:1n0nn0000;OR:1111nn1n0", &sk) == TVL_STATUS_OK);

    char *enc = NULL;
    CHECK(tvl_scheme_encode(sk, &enc) == TVL_STATUS_OK);
    CHECK(strcmp(enc, "NEG:0n1;AND:1n0nn0000;OR:1111nn1n0") == 0);
    tvl_string_free(enc);

    TvlClassification c;
    CHECK(tvl_classify(sk, &c) == TVL_STATUS_OK);
    CHECK(c.boolean_normal && c.monotonic && !c.truth_collapsible && !c.falsity_collapsible);

    bool classical = false;
    CHECK(tvl_decide(sk, TVL_RELATION_ST, &classical) == TVL_STATUS_OK && classical);
    CHECK(tvl_decide(sk, TVL_RELATION_TS, &classical) == TVL_STATUS_OK && !classical);

    bool valid = true;
    CHECK(tvl_sequent_valid(sk, TVL_RELATION_TS, "p |- p", &valid) == TVL_STATUS_OK && !valid);
    CHECK(tvl_sequent_valid(sk, TVL_RELATION_ST, "p |-", &valid) == TVL_STATUS_OK && !valid);

    uint64_t n = 0;
    CHECK(tvl_count_classical(TVL_RELATION_ST, &n) == TVL_STATUS_OK && n == 528);

    TvlScheme *bad = NULL;
    CHECK(tvl_scheme_parse("nonsense", &bad) == TVL_STATUS_PARSE_ERROR && bad == NULL);
    CHECK(strlen(tvl_last_error_message()) > 0);
    CHECK(tvl_decide(NULL, TVL_RELATION_SS, &classical) == TVL_STATUS_NULL_POINTER);

    tvl_scheme_free(sk);
    puts("ok");
    return 0;
}

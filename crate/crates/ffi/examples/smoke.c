#include <stdio.h>
#include "bnfacets.h"

static int fail(const char *what) {
    const char *msg = bnf_last_error();
    fprintf(stderr, "%s: %s\n", what, msg ? msg : "(no message)");
    return 1;
}

int main(void) {
    size_t count = 0;
    if (bnf_dag_count(4, &count) != BNF_STATUS_OK) return fail("dag_count");
    printf("dags %zu\n", count);

    BnfDag *dag = NULL;
    if (bnf_dag_from_json("{\"a\": \"\", \"b\": \"\", \"c\": \"ab\"}", &dag) != BNF_STATUS_OK) return fail("dag");
    char *json = NULL;
    if (bnf_dag_encode(dag, BNF_ENCODING_CHAR, &json) != BNF_STATUS_OK) return fail("encode");
    printf("char %s\n", json);
    bnf_string_free(json);
    bnf_dag_free(dag);

    BnfVrep *points = NULL;
    BnfHrep *hull = NULL;
    if (bnf_vrep_dag_points(3, 1, &points) != BNF_STATUS_OK) return fail("points");
    if (bnf_hull(points, 10.0, &hull) != BNF_STATUS_OK) return fail("hull");
    printf("facets %zu\n", bnf_hrep_facet_count(hull));
    bnf_hrep_free(hull);
    bnf_vrep_free(points);

    if (bnf_dag_from_json("{\"a\": \"b\", \"b\": \"a\"}", &dag) == BNF_STATUS_INVALID_ARGUMENT)
        printf("cyclic rejected\n");
    return 0;
}

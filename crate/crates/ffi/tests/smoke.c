#include <math.h>
#include <stdio.h>
#include <string.h>

#include "bellgeom.h"

#define CHECK(cond)                                                     \
    do {                                                                \
        if (!(cond)) {                                                  \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,     \
                    __LINE__, #cond);                                   \
            return 1;                                                   \
        }                                                               \
    } while (0)

int main(void) {
    BgMeasureReport report;
    CHECK(bg_measure(1.0, -1.0, 1.0, &report) == BG_STATUS_OK);
    CHECK(report.classification == BG_CLASSIFICATION_ENTANGLED);
    CHECK(fabs(report.concurrence - 1.0) <= 1e-12);
    CHECK(fabs(report.euclid_distance - 2.0 / sqrt(3.0)) <= 1e-12);
    CHECK(fabs(report.hs_distance - 1.0 / sqrt(3.0)) <= 1e-12);

    CHECK(bg_measure(0.5, 0.5, 0.5, &report) == BG_STATUS_NON_PHYSICAL);
    CHECK(isnan(report.concurrence));
    CHECK(strstr(bg_last_error_message(), "physical") != NULL);

    BgDensityMatrix *rho = NULL;
    CHECK(bg_density_from_standard(-0.8, -0.5, -0.4, &rho) == BG_STATUS_OK);
    double c = 0.0, n = 0.0;
    CHECK(bg_density_concurrence(rho, &c) == BG_STATUS_OK);
    CHECK(bg_density_negativity(rho, &n) == BG_STATUS_OK);
    CHECK(fabs(c - 0.35) <= 1e-9 && fabs(n - 0.35) <= 1e-9);

    double a[8] = {2.0, 0.0, 0.5, 0.0, 0.0, 0.0, 1.0, 0.0};
    double b[8] = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0};
    BgFilterLaw law;
    CHECK(bg_density_filter_law(rho, a, b, &law) == BG_STATUS_OK);
    CHECK(fabs(law.predicted - law.actual) <= 1e-8);

    double entries[32];
    CHECK(bg_density_entries(rho, entries) == BG_STATUS_OK);
    BgDensityMatrix *copy = NULL;
    CHECK(bg_density_new(entries, &copy) == BG_STATUS_OK);
    entries[0] += 0.5;
    BgDensityMatrix *bad = NULL;
    CHECK(bg_density_new(entries, &bad) == BG_STATUS_NOT_UNIT_TRACE);
    CHECK(bad == NULL);
    bg_density_free(copy);
    bg_density_free(rho);

    BgSampler *sampler = NULL;
    CHECK(bg_sampler_new(3, BG_REGION_SEPARABLE, &sampler) == BG_STATUS_OK);
    for (int i = 0; i < 100; ++i) {
        double r[3];
        BgClassification cls;
        CHECK(bg_sampler_next(sampler, r) == BG_STATUS_OK);
        CHECK(bg_classify(r[0], r[1], r[2], &cls) == BG_STATUS_OK);
        CHECK(cls == BG_CLASSIFICATION_SEPARABLE);
    }
    bg_sampler_free(sampler);

    CHECK(strcmp(bg_status_name(BG_STATUS_NOT_PSD), "not positive semidefinite") == 0);
    printf("bellgeom %s C smoke test ok\n", bg_version());
    return 0;
}

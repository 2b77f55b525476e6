/* Exercises the shared library through its C header only. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "paretotopo/paretotopo.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static char* slurp(const char* path) {
  FILE* fp = fopen(path, "rb");
  if (!fp) return NULL;
  fseek(fp, 0, SEEK_END);
  long len = ftell(fp);
  fseek(fp, 0, SEEK_SET);
  char* buf = malloc((size_t)len + 1);
  size_t got = fread(buf, 1, (size_t)len, fp);
  buf[got] = '\0';
  fclose(fp);
  return buf;
}

int main(int argc, char** argv) {
  const char* dir = argc > 1 ? argv[1] : ".";
  char prefix[512], xpath[600], fpath[600], svg[600], csv[600];
  snprintf(prefix, sizeof prefix, "%s/capi_cloud", dir);
  snprintf(xpath, sizeof xpath, "%s_x.csv", prefix);
  snprintf(fpath, sizeof fpath, "%s_f.csv", prefix);
  snprintf(svg, sizeof svg, "%s/capi.svg", dir);
  snprintf(csv, sizeof csv, "%s/capi_diagram.csv", dir);

  EXPECT(strcmp(pt_version(), "0.1.0") == 0);
  EXPECT(strcmp(pt_status_name(PT_PARSE), "parse") == 0);

  /* sample, save, load back */
  pt_cloud* cloud = NULL;
  EXPECT(pt_cloud_sample("dtlz5", 60, 3, 0.0, &cloud) == PT_OK);
  EXPECT(cloud != NULL);
  EXPECT(pt_cloud_size(cloud) == 60);
  EXPECT(pt_cloud_dim(cloud) == 12);
  EXPECT(pt_cloud_num_objectives(cloud) == 3);
  EXPECT(pt_cloud_save(cloud, prefix) == PT_OK);
  pt_cloud* loaded = NULL;
  EXPECT(pt_cloud_load(xpath, fpath, &loaded) == PT_OK);
  EXPECT(pt_cloud_size(loaded) == 60);

  /* identical input gives identical reports */
  pt_report* a = NULL;
  pt_report* b = NULL;
  const char* cfg = "{\"bootstrap\":20,\"seed\":3}";
  EXPECT(pt_analyze(cloud, cfg, &a) == PT_OK);
  EXPECT(pt_analyze(loaded, cfg, &b) == PT_OK);
  if (a && b) {
    EXPECT(strcmp(pt_report_json(a), pt_report_json(b)) == 0);
    EXPECT(strstr(pt_report_json(a), "\"format\": \"paretotopo-report\"") != NULL);
    EXPECT(pt_report_result_count(a) == 1);
    EXPECT(pt_report_write_svg(a, 0, svg) == PT_OK);
    EXPECT(pt_report_write_diagram_csv(a, 0, csv) == PT_OK);
    EXPECT(pt_report_write_svg(a, 5, svg) == PT_INVALID_ARGUMENT);
    char* text = slurp(svg);
    EXPECT(text && strncmp(text, "<svg", 4) == 0);
    free(text);
    text = slurp(csv);
    EXPECT(text && strncmp(text, "dim,birth,death,essential\n", 26) == 0);
    free(text);
  }
  pt_report_free(a);
  pt_report_free(b);

  /* arrays in, errors out */
  const double x[4] = {0.0, 0.0, 1.0, 1.0};
  const double f[4] = {0.0, 1.0, 1.0, 0.0};
  pt_cloud* small = NULL;
  EXPECT(pt_cloud_from_arrays(x, 2, 2, f, 2, &small) == PT_OK);
  EXPECT(pt_cloud_from_arrays(NULL, 2, 2, f, 2, &small) == PT_INVALID_ARGUMENT);
  pt_report* r = NULL;
  EXPECT(pt_analyze(cloud, "{\"colour\":1}", &r) != PT_OK);
  EXPECT(strlen(pt_last_error()) > 0);
  EXPECT(pt_analyze(cloud, "{", &r) == PT_PARSE);
  EXPECT(pt_cloud_load("/nonexistent/x.csv", NULL, &loaded) == PT_IO);
  EXPECT(pt_cloud_sample("zdt1", 10, 1, 0.0, &small) == PT_INVALID_ARGUMENT);
  pt_cloud_free(small);

  /* experiments */
  char* summary = NULL;
  char* rows = NULL;
  EXPECT(pt_run_trials("{\"problem\":\"dtlz5\",\"trials\":1,\"n\":40,\"analysis\":{\"bootstrap\":10}}", &summary,
                       &rows) == PT_OK);
  EXPECT(summary && strncmp(summary, "Problem,Trials,Completed", 24) == 0);
  EXPECT(rows && strncmp(rows, "trial,seed,status", 17) == 0);
  pt_string_free(summary);
  pt_string_free(rows);
  char* bench = NULL;
  EXPECT(pt_run_bench("{\"n\":[20],\"maxdim\":[2],\"repeats\":1,\"simplex_cap\":50}", &bench) == PT_OK);
  EXPECT(bench && strstr(bench, "DNF") != NULL);
  pt_string_free(bench);

  pt_cloud_free(cloud);
  pt_cloud_free(loaded);
  pt_cloud_free(NULL);
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("c api: ok\n");
  return 0;
}

/* Minimal C client.
 *
 *   cargo build -p catbench-ffi --release
 *   cc crates/ffi/examples/smoke.c -Icrates/ffi/include \
 *      target/release/libcatbench_ffi.a -lpthread -ldl -lm -o smoke
 *   ./smoke data/demo_corpus.csv "Reference Category"
 */
#include <stdio.h>
#include <string.h>

#include "catbench.h"

int main(int argc, char **argv) {
  if (argc < 3) {
    fprintf(stderr, "usage: %s CORPUS.csv REFERENCE\n", argv[0]);
    return 2;
  }
  CatbenchCorpus *corpus = NULL;
  if (catbench_corpus_from_path(argv[1], &corpus) != CATBENCH_STATUS_OK) {
    fprintf(stderr, "load failed: %s\n", catbench_last_error());
    return 2;
  }

  CatbenchBenchOptions opts = catbench_bench_options_default();
  opts.k = 5;
  CatbenchResult *result = NULL;
  CatbenchStatus st = catbench_benchmark_run(corpus, argv[2], &opts, &result);
  if (st != CATBENCH_STATUS_OK) {
    fprintf(stderr, "benchmark failed (%d): %s\n", (int)st, catbench_last_error());
    catbench_corpus_free(corpus);
    return 3;
  }
  for (size_t i = 0; i < catbench_result_len(result); i++) {
    double gain = 0.0;
    catbench_result_gain(result, i, &gain);
    printf("%zu\t%s\t%.6f\n", i + 1, catbench_result_category(result, i), gain);
  }

  char *svg = NULL;
  if (catbench_result_render_svg(result, NULL, true, &svg) == CATBENCH_STATUS_OK) {
    printf("svg bytes: %zu\n", strlen(svg));
    catbench_string_free(svg);
  }
  catbench_result_free(result);
  catbench_corpus_free(corpus);
  return 0;
}

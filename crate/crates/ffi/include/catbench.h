#ifndef CATBENCH_H
#define CATBENCH_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CatbenchIndicator {
  CATBENCH_INDICATOR_IMPACT_FACTOR = 0,
  CATBENCH_INDICATOR_EIGENFACTOR = 1,
  CATBENCH_INDICATOR_IMMEDIACY = 2,
} CatbenchIndicator;

typedef enum CatbenchScale {
  // Linear for impact factor and immediacy, logarithmic for Eigenfactor.
  CATBENCH_SCALE_DEFAULT = 0,
  CATBENCH_SCALE_LINEAR = 1,
  CATBENCH_SCALE_LOG = 2,
} CatbenchScale;

typedef enum CatbenchStatus {
  CATBENCH_STATUS_OK = 0,
  CATBENCH_STATUS_NULL_POINTER = 1,
  CATBENCH_STATUS_INVALID_UTF8 = 2,
  // Unreadable or malformed input data.
  CATBENCH_STATUS_INPUT_ERROR = 3,
  // Unknown category, empty data, or an unusable distribution.
  CATBENCH_STATUS_DOMAIN_ERROR = 4,
  CATBENCH_STATUS_INVALID_ARGUMENT = 5,
  CATBENCH_STATUS_INDEX_OUT_OF_RANGE = 6,
  CATBENCH_STATUS_PANIC = 7,
} CatbenchStatus;

typedef enum CatbenchLogBase {
  CATBENCH_LOG_BASE_NATURAL = 0,
  CATBENCH_LOG_BASE_BASE2 = 1,
} CatbenchLogBase;

// Parsed, immutable corpus.
typedef struct CatbenchCorpus CatbenchCorpus;

// Ranking of one benchmark run.
typedef struct CatbenchResult CatbenchResult;

// Settings for one single-indicator benchmark run.
typedef struct CatbenchBenchOptions {
  enum CatbenchIndicator indicator;
  size_t bin_count;
  enum CatbenchScale scale;
  double alpha;
  // Ranking length kept; 0 keeps the full ranking.
  size_t k;
} CatbenchBenchOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer is
// valid until the next catbench call on the same thread.
const char *catbench_last_error(void);

// Frees a string returned by this library. NULL is ignored.
void catbench_string_free(char *s);

// Defaults: impact factor, 20 bins, default scale, alpha 0.5, k 30.
struct CatbenchBenchOptions catbench_bench_options_default(void);

// Parses corpus CSV text.
enum CatbenchStatus catbench_corpus_from_csv(const char *text, struct CatbenchCorpus **out);

// Reads and parses a corpus CSV file.
enum CatbenchStatus catbench_corpus_from_path(const char *path, struct CatbenchCorpus **out);

void catbench_corpus_free(struct CatbenchCorpus *corpus);

// Number of (journal, category) records; 0 for NULL.
size_t catbench_corpus_record_count(const struct CatbenchCorpus *corpus);

size_t catbench_corpus_category_count(const struct CatbenchCorpus *corpus);

// Validation report as JSON.
enum CatbenchStatus catbench_corpus_validate_json(const struct CatbenchCorpus *corpus,
                                                  size_t min_records,
                                                  char **out_json);

// Information gain `a * sum p_i log(p_i / q_i)` of two probability vectors
// of length `len`.
enum CatbenchStatus catbench_information_gain(const double *p,
                                              const double *q,
                                              size_t len,
                                              double scale_constant,
                                              enum CatbenchLogBase base,
                                              double *out);

// Ranks every other category against `reference` for one indicator.
enum CatbenchStatus catbench_benchmark_run(const struct CatbenchCorpus *corpus,
                                           const char *reference,
                                           const struct CatbenchBenchOptions *options,
                                           struct CatbenchResult **out);

void catbench_result_free(struct CatbenchResult *result);

// Number of ranked categories; 0 for NULL.
size_t catbench_result_len(const struct CatbenchResult *result);

// Category at 0-based position `index`, or NULL when out of range. The
// string is owned by `result` and lives as long as it does.
const char *catbench_result_category(const struct CatbenchResult *result, size_t index);

enum CatbenchStatus catbench_result_gain(const struct CatbenchResult *result,
                                         size_t index,
                                         double *out);

// Result serialized as JSON, the same document `catbench bench --out DIR` writes per indicator.
enum CatbenchStatus catbench_result_to_json(const struct CatbenchResult *result, char **out_json);

// Heliocentric map of `result` as SVG text. `prestige_path` may be NULL
// for ascending-gain order.
enum CatbenchStatus catbench_result_render_svg(const struct CatbenchResult *result,
                                               const char *prestige_path,
                                               bool rings,
                                               char **out_svg);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CATBENCH_H */

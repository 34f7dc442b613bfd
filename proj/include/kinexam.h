/* kinexam: kinematic feature extraction and abnormality detection for
 * neuromotor test recordings (finger tapping, finger-to-finger, forearm
 * roll, stand-up-and-walk) from 2D/3D pose time series.
 *
 * C interface of the shared library. Handles are opaque; every function
 * returns a kx_status, with kx_last_error() carrying the message of the most
 * recent failure on the calling thread. Strings returned through char**
 * outputs are owned by the caller and released with kx_string_free().
 */
#ifndef KINEXAM_H
#define KINEXAM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kx_status {
  KX_OK = 0,
  KX_ERR_PARSE = 1,
  KX_ERR_SCHEMA = 2,
  KX_ERR_VALUE = 3,
  KX_ERR_RANGE = 4,
  KX_ERR_INDEX = 5,
  KX_ERR_DEGENERATE = 6,
  KX_ERR_ALL_LOW_CONFIDENCE = 7,
  KX_ERR_NO_CYCLES = 8,
  KX_ERR_SEGMENTATION = 9,
  KX_ERR_NO_STAND_UP = 10,
  KX_ERR_FIT = 11,
  KX_ERR_CONVERGENCE = 12,
  KX_ERR_EMPTY_MATRIX = 13,
  KX_ERR_DEGENERATE_FOLD = 14,
  KX_ERR_INSUFFICIENT_DATA = 15,
  KX_ERR_IO = 16,
  KX_ERR_INTERNAL = 17
} kx_status;

typedef struct kx_recording kx_recording;

typedef struct kx_recording_info {
  double fps;
  size_t n_frames;
  char test_kind[8]; /* "FT" | "FTF" | "FR" | "SAW" */
  char label[12];    /* "normal" | "abnormal" | "unlabeled" */
} kx_recording_info;

const char* kx_version(void);

/* Message of the last failure on this thread; never NULL. */
const char* kx_last_error(void);

void kx_string_free(char* s);

/* ---- recordings ------------------------------------------------------ */

/* Loads canonical JSON (or CSV with its .meta.json sidecar, by extension). */
kx_status kx_recording_load(const char* path, kx_recording** out);
kx_status kx_recording_from_json(const char* text, kx_recording** out);
kx_status kx_recording_save(const kx_recording* rec, const char* path);
kx_status kx_recording_to_json(const kx_recording* rec, char** out);
kx_status kx_recording_info_get(const kx_recording* rec,
                                kx_recording_info* out);
void kx_recording_free(kx_recording* rec);

/* ---- feature extraction ---------------------------------------------- */

/* config_json: flat-keyed run configuration ("{}" or NULL for defaults).
 * Output JSON: {"recording_id", "test_kind", "config_hash",
 * "features": [[name, value|null], ...]} in catalogue order. */
kx_status kx_extract_features(const kx_recording* rec,
                              const char* config_json, char** out_json);

/* ---- synthetic recordings -------------------------------------------- */

kx_status kx_synth_generate(const char* params_json, kx_recording** out);

/* Writes 4*n_subjects canonical JSON recordings into out_dir. */
kx_status kx_run_synth_cohort(const char* test_kind, int n_subjects,
                              uint64_t seed, const char* out_dir,
                              size_t* n_files);

/* ---- pipeline commands ------------------------------------------------ */

/* Extracts features for each input into a CSV table; failures go to the
 * errors JSON (always written, empty array when everything succeeded). The
 * CSV is only written when n_ok > 0; check the counts for partial failure.
 * segments_out_dir (optional, may be NULL): directory receiving a
 * <stem>.segments.json walk/turn/stand-up report per SAW input. */
kx_status kx_run_extract(const char* const* inputs, size_t n_inputs,
                         const char* config_json, const char* out_csv,
                         const char* out_errors_json,
                         const char* segments_out_dir, size_t* n_ok,
                         size_t* n_failed);

/* split: "video" | "subject"; model: "logreg" | "rf". */
kx_status kx_run_classify(const char* features_csv, const char* split,
                          const char* model, const char* config_json,
                          const char* out_json);

/* out_svg may be NULL to skip the plot. */
kx_status kx_run_pca(const char* features_csv, size_t k, const char* out_csv,
                     const char* out_svg);

kx_status kx_run_distance(const char* features_csv, const char* out_json,
                          const char* out_svg);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KINEXAM_H */

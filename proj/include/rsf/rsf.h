/* Copyright 2026 The rsf Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the rsf network synthesizer. Every object is an opaque
 * handle released by its matching *_free function. Functions return an
 * rsf_status; on failure rsf_last_error() describes the problem for the
 * calling thread. Strings returned through char** are owned by the caller
 * and released with rsf_string_free.
 */
#ifndef RSF_RSF_H_
#define RSF_RSF_H_

#include <stddef.h>
#include <stdint.h>

#if defined(RSF_BUILDING_LIBRARY)
#define RSF_API __attribute__((visibility("default")))
#else
#define RSF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rsf_status {
  RSF_OK = 0,
  RSF_ERR_INVALID_ARGUMENT = 1,
  RSF_ERR_CONFIG = 2,
  RSF_ERR_PARSE = 3,
  RSF_ERR_VERSION = 4,
  RSF_ERR_CONDITIONING = 5,
  RSF_ERR_IO = 6,
  RSF_ERR_INTERNAL = 7
} rsf_status;

typedef enum rsf_form { RSF_FORM_MODIFIED = 0, RSF_FORM_RELU = 1 } rsf_form;

typedef struct rsf_config rsf_config;
typedef struct rsf_network rsf_network;

typedef struct rsf_network_info {
  int dim;
  rsf_form form;
  size_t layers;
  size_t stages;
  double radius;
  double delta;
  double second_derivative_bound;
  uint64_t seed;
  double y_extent;
  double rho;
  double margin;
  double error_bound;
  double layer_bound;
  double stage_bound;
} rsf_network_info;

typedef struct rsf_verify_options {
  int grid;
  uint64_t seed;
  int threads; /* 0 = available parallelism */
  size_t sign_samples;
  size_t boundary_samples; /* per stage */
  size_t graph_samples;
  size_t nesting_samples;  /* per stage */
  size_t coverage_samples; /* per stage */
  size_t cap_samples;      /* per layer */
} rsf_verify_options;

RSF_API const char* rsf_version(void);
RSF_API const char* rsf_status_name(rsf_status status);
/* Message of the last failed call on this thread; empty when none. */
RSF_API const char* rsf_last_error(void);
RSF_API void rsf_string_free(char* s);

/* --- configuration --- */
RSF_API rsf_status rsf_config_parse(const char* json, rsf_config** out);
RSF_API rsf_status rsf_config_load(const char* path, rsf_config** out);
RSF_API void rsf_config_free(rsf_config* config);
RSF_API rsf_status rsf_config_set_seed(rsf_config* config, uint64_t seed);
RSF_API rsf_status rsf_config_seed(const rsf_config* config, uint64_t* seed);
RSF_API rsf_status rsf_config_dim(const rsf_config* config, int* dim);
RSF_API rsf_status rsf_config_to_json(const rsf_config* config, char** out);

/* --- networks --- */
/* Builds the modified-form network described by the config. */
RSF_API rsf_status rsf_build(const rsf_config* config, rsf_network** out);
/* Standard ReLU form. rho <= 0 uses the bounding radius stored in the
 * network; margin <= 0 uses the stored margin. */
RSF_API rsf_status rsf_convert(const rsf_network* modified, double rho, double margin,
                               rsf_network** out);
RSF_API void rsf_network_free(rsf_network* net);

RSF_API rsf_status rsf_network_parse(const char* text, rsf_network** out);
RSF_API rsf_status rsf_network_load(const char* path, rsf_network** out);
RSF_API rsf_status rsf_network_to_json(const rsf_network* net, char** out);
RSF_API rsf_status rsf_network_save(const rsf_network* net, const char* path);

RSF_API rsf_status rsf_network_info_get(const rsf_network* net, rsf_network_info* info);

/* F(x, y); x has `dim` entries. */
RSF_API rsf_status rsf_network_eval(const rsf_network* net, const double* x, size_t dim,
                                    double y, double* out);
/* phi_hat(x) = F(x, 0), failing when F is not affine in y with slope -1. */
RSF_API rsf_status rsf_network_height(const rsf_network* net, const double* x, size_t dim,
                                      double* out);

/* Projection slope of one modified-form layer. */
RSF_API rsf_status rsf_network_layer_slope(const rsf_network* net, size_t layer,
                                           double* slope);
RSF_API rsf_status rsf_network_set_layer_slope(rsf_network* net, size_t layer, double slope);

/* --- analysis --- */
RSF_API void rsf_verify_options_default(rsf_verify_options* options);
/* Runs the invariant suite, sup error and sign check. `passed` is set to 1
 * or 0. report_json receives the JSON report; grid_csv (may be NULL)
 * receives the grid heights. */
RSF_API rsf_status rsf_verify(const rsf_network* net, const rsf_config* config,
                              const rsf_verify_options* options, int* passed,
                              char** report_json, char** grid_csv);

/* Per-layer trajectory of (x, y) as CSV: the input row, then one row per
 * layer that moves the point. Modified form only. */
RSF_API rsf_status rsf_trace_csv(const rsf_network* net, const double* x, size_t dim,
                                 double y, char** csv);

#ifdef __cplusplus
}
#endif

#endif /* RSF_RSF_H_ */

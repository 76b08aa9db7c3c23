// Copyright 2026 The socdiff Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the socdiff engine. All functions return a socdiff_status;
 * on failure socdiff_last_error() describes the problem (thread-local, valid
 * until the next failing call on the same thread). Handles are opaque and
 * owned by the caller. CSV-producing calls write to `csv_path`, or to
 * standard output when it is NULL or "-". */

#ifndef SOCDIFF_SOCDIFF_H_
#define SOCDIFF_SOCDIFF_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define SOCDIFF_API __declspec(dllexport)
#else
#  define SOCDIFF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum socdiff_status {
  SOCDIFF_OK = 0,
  SOCDIFF_ERR_CONFIG = 1,    /* invalid or unparseable configuration */
  SOCDIFF_ERR_USAGE = 2,     /* bad argument or call sequence */
  SOCDIFF_ERR_IO = 3,        /* file could not be read or written */
  SOCDIFF_ERR_SNAPSHOT = 4,  /* malformed snapshot or checksum mismatch */
  SOCDIFF_ERR_NUMERICAL = 5, /* non-finite loss during training */
  SOCDIFF_ERR_INTERNAL = 6
} socdiff_status;

typedef struct socdiff_config socdiff_config;
typedef struct socdiff_snapshot socdiff_snapshot;

typedef enum socdiff_targeting {
  SOCDIFF_TARGET_NONE = 0,
  SOCDIFF_TARGET_UNIFORM = 1, /* one uniformly random agent per episode */
  SOCDIFF_TARGET_NODE = 2     /* always `node` */
} socdiff_targeting;

typedef struct socdiff_attack {
  socdiff_targeting targeting;
  double beta;
  int node;
} socdiff_attack;

typedef enum socdiff_bin_by {
  SOCDIFF_BIN_TARGET_SIGNAL = 0,
  SOCDIFF_BIN_NEIGHBOR_SIGNAL = 1
} socdiff_bin_by;

/* Progress callback: episode count, population-average probe A_1 and A_T. */
typedef void (*socdiff_progress_fn)(long long episode, double probe_a1,
                                    double probe_at, void* user);

SOCDIFF_API const char* socdiff_version(void);
SOCDIFF_API const char* socdiff_last_error(void);

SOCDIFF_API socdiff_status socdiff_config_default(socdiff_config** out);
/* Errors name the file and line. */
SOCDIFF_API socdiff_status socdiff_config_load(const char* path,
                                               socdiff_config** out);
SOCDIFF_API socdiff_status socdiff_config_set(socdiff_config* cfg,
                                              const char* key,
                                              const char* value);
/* Copies the value of `key` (NUL-terminated) into buf; fails with
 * SOCDIFF_ERR_USAGE if it does not fit. */
SOCDIFF_API socdiff_status socdiff_config_get(const socdiff_config* cfg,
                                              const char* key, char* buf,
                                              size_t buf_len);
SOCDIFF_API void socdiff_config_free(socdiff_config* cfg);

/* Trains and writes a snapshot directory. When `snapshot_out` is non-NULL it
 * receives a handle to the result. */
SOCDIFF_API socdiff_status socdiff_train(const socdiff_config* cfg,
                                         const char* out_dir,
                                         socdiff_progress_fn progress,
                                         void* user,
                                         socdiff_snapshot** snapshot_out);

/* Refuses to load when any checksum in manifest.json fails. */
SOCDIFF_API socdiff_status socdiff_snapshot_load(const char* dir,
                                                 socdiff_snapshot** out);
SOCDIFF_API void socdiff_snapshot_free(socdiff_snapshot* snap);
SOCDIFF_API int socdiff_snapshot_n_agents(const socdiff_snapshot* snap);
SOCDIFF_API int socdiff_snapshot_input_dim(const socdiff_snapshot* snap,
                                           int agent);
/* Training seed recorded in the snapshot's config. */
SOCDIFF_API uint64_t socdiff_snapshot_seed(const socdiff_snapshot* snap);

/* Greedy evaluation. `attack` may be NULL (no adversary). When `mean_out`
 * and `stderr_out` are non-NULL they receive up to `capacity` per-step
 * values; `steps_out` (optional) receives the horizon. `csv_path` NULL and
 * `mean_out` non-NULL writes no CSV. */
SOCDIFF_API socdiff_status socdiff_eval(const socdiff_snapshot* snap,
                                        long long episodes, uint64_t seed,
                                        const socdiff_attack* attack,
                                        const char* csv_path,
                                        double* mean_out, double* stderr_out,
                                        size_t capacity, int* steps_out);

/* Node sweep for every beta in `betas`, rows concatenated in beta order. */
SOCDIFF_API socdiff_status socdiff_sweep_nodes(const socdiff_snapshot* snap,
                                               const double* betas,
                                               size_t n_betas,
                                               long long episodes,
                                               uint64_t seed,
                                               const char* csv_path);

/* Binned efficacy sweep; `runs` independent evaluation seeds. */
SOCDIFF_API socdiff_status socdiff_sweep_signal(
    const socdiff_snapshot* snap, socdiff_bin_by by, const double* betas,
    size_t n_betas, const double* bin_edges, size_t n_edges,
    long long episodes, int runs, uint64_t seed, const char* csv_path);

SOCDIFF_API socdiff_status socdiff_bench(double sigma2, int n_agents,
                                         const char* csv_path);

SOCDIFF_API uint64_t socdiff_seed_split(uint64_t master_seed,
                                        const char* label);

#ifdef __cplusplus
}
#endif

#endif /* SOCDIFF_SOCDIFF_H_ */

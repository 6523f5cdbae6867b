#ifndef QWELFARE_H
#define QWELFARE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define QW_KIND_GOODS 0

#define QW_KIND_CHORES 1

#define QW_OBJECTIVE_USW 0

#define QW_OBJECTIVE_ESW 1

#define QW_OBJECTIVE_USC 2

#define QW_OBJECTIVE_ESC 3

// Status codes; 1 and 2 match the exit codes of the `qwelfare` binary.
typedef enum QwStatus {
  QW_STATUS_OK = 0,
  // Well-formed request outside what the solvers handle.
  QW_STATUS_UNSUPPORTED = 1,
  // Malformed instance, allocation or argument.
  QW_STATUS_INVALID = 2,
  QW_STATUS_NULL_POINTER = 3,
  // A Rust panic was caught at the boundary.
  QW_STATUS_PANIC = 4,
} QwStatus;

typedef struct QwInstance QwInstance;

typedef struct QwReport QwReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or an empty string.
// Valid until the next call into this library on the same thread.
const char *qw_last_error(void);

// Parses an instance from its JSON file format.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum QwStatus qw_instance_from_json(const char *json, struct QwInstance **out);

// Builds an instance from row-major `values` (`agents * items` entries) and
// per-agent quantiles `tau_num[i] / tau_den[i]`.
//
// # Safety
// The arrays must hold the stated number of elements and `out` must be valid.
enum QwStatus qw_instance_new(uint32_t kind,
                              size_t agents,
                              size_t items,
                              const uint32_t *tau_num,
                              const uint32_t *tau_den,
                              const uint32_t *values,
                              struct QwInstance **out);

// # Safety
// `instance` must come from this library and not be used afterwards.
void qw_instance_free(struct QwInstance *instance);

// Number of agents, or 0 for a null handle.
//
// # Safety
// `instance` must be null or a live handle.
size_t qw_instance_agents(const struct QwInstance *instance);

// Number of items, or 0 for a null handle.
//
// # Safety
// `instance` must be null or a live handle.
size_t qw_instance_items(const struct QwInstance *instance);

// Runs a solver. `algorithm` is a solver name such as `"greedy"`; null means `"auto"`.
//
// # Safety
// `instance` must be a live handle, `algorithm` null or NUL-terminated, `out` valid.
enum QwStatus qw_solve(const struct QwInstance *instance,
                       uint32_t objective_code,
                       bool balanced,
                       const char *algorithm,
                       struct QwReport **out);

// Exact optimum by exhaustive enumeration of at most `budget` allocations.
//
// # Safety
// `instance` must be a live handle and `out` valid.
enum QwStatus qw_oracle(const struct QwInstance *instance,
                        uint32_t objective_code,
                        bool balanced,
                        uint64_t budget,
                        struct QwReport **out);

// Objective value of the allocation giving item `g` to agent `owner[g]`.
//
// # Safety
// `owner` must hold `items` entries and `out` must be valid.
enum QwStatus qw_evaluate(const struct QwInstance *instance,
                          uint32_t objective_code,
                          const size_t *owner,
                          size_t items,
                          int64_t *out);

// # Safety
// `report` must come from this library and not be used afterwards.
void qw_report_free(struct QwReport *report);

// # Safety
// `report` must be a live handle.
int64_t qw_report_welfare(const struct QwReport *report);

// False when a decision procedure found the target infeasible.
//
// # Safety
// `report` must be a live handle.
bool qw_report_feasible(const struct QwReport *report);

// Name of the algorithm that produced the report; owned by the report.
//
// # Safety
// `report` must be a live handle.
const char *qw_report_algorithm(const struct QwReport *report);

// Number of items in the reported allocation.
//
// # Safety
// `report` must be a live handle.
size_t qw_report_items(const struct QwReport *report);

// Copies the owner of each item into `buffer`, which must hold at least
// `qw_report_items(report)` entries.
//
// # Safety
// `report` must be a live handle and `buffer` writable for `len` entries.
enum QwStatus qw_report_owner(const struct QwReport *report, size_t *buffer, size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QWELFARE_H */

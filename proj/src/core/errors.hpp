#pragma once

#include <stdexcept>
#include <string>

namespace kinexam {

// Stable error codes, mirrored one-to-one by the C API status enum.
enum class ErrorCode {
  parse = 1,
  schema,
  value,
  range,
  index,
  degenerate,
  all_low_confidence,
  no_cycles,
  segmentation,
  no_stand_up,
  fit,
  convergence,
  empty_matrix,
  degenerate_fold,
  insufficient_data,
  io,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define KINEXAM_DEFINE_ERROR(NAME, CODE)                    \
  class NAME : public Error {                               \
   public:                                                  \
    explicit NAME(const std::string& what)                  \
        : Error(ErrorCode::CODE, what) {}                   \
  }

KINEXAM_DEFINE_ERROR(ParseError, parse);
KINEXAM_DEFINE_ERROR(SchemaError, schema);
KINEXAM_DEFINE_ERROR(ValueError, value);
KINEXAM_DEFINE_ERROR(RangeError, range);
KINEXAM_DEFINE_ERROR(IndexError, index);
KINEXAM_DEFINE_ERROR(DegenerateError, degenerate);
KINEXAM_DEFINE_ERROR(AllLowConfidenceError, all_low_confidence);
KINEXAM_DEFINE_ERROR(NoCyclesError, no_cycles);
KINEXAM_DEFINE_ERROR(SegmentationError, segmentation);
KINEXAM_DEFINE_ERROR(NoStandUpError, no_stand_up);
KINEXAM_DEFINE_ERROR(FitError, fit);
KINEXAM_DEFINE_ERROR(ConvergenceError, convergence);
KINEXAM_DEFINE_ERROR(EmptyMatrixError, empty_matrix);
KINEXAM_DEFINE_ERROR(DegenerateFoldError, degenerate_fold);
KINEXAM_DEFINE_ERROR(InsufficientDataError, insufficient_data);
KINEXAM_DEFINE_ERROR(IOError, io);

#undef KINEXAM_DEFINE_ERROR

}  // namespace kinexam

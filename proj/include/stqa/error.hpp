#ifndef STQA_ERROR_HPP_
#define STQA_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace stqa {

enum class ErrorKind {
  kInvalidPose,
  kMissingObject,
  kFrameOutOfRange,
  kParse,
  kIo,
  kValidation,
  kInvalidConfig,
  kDegenerateValue,
  kInsufficientPairs,
  kRatioOverflow,
  kEmptyGroup,
  kInvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace stqa

#endif  // STQA_ERROR_HPP_

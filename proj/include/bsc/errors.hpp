#pragma once

#include <stdexcept>
#include <string>

namespace bsc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedHeader : Error { using Error::Error; };
struct TruncatedData : Error { using Error::Error; };
struct EmptyShape : Error { using Error::Error; };
struct DegenerateShape : Error { using Error::Error; };
struct ParseError : Error {
    int line;
    ParseError(int line_no, const std::string& what)
        : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};
struct LengthMismatch : Error { using Error::Error; };
struct ParamMismatch : Error { using Error::Error; };
struct EmptyMatrix : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct NonFiniteInput : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct NonSquare : Error { using Error::Error; };
struct BadParams : Error { using Error::Error; };
struct EmptyGallery : Error { using Error::Error; };

}  // namespace bsc

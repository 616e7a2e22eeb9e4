#pragma once

#include <stdexcept>
#include <string>

#include "cyclo2/gralg.hpp"

namespace cyclo2 {

class PresentationError : public std::runtime_error {
public:
    PresentationError(const std::string& msg, int line, int column);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

/*
 * Sections:
 *   [generators]  name degree [augmentation]
 *   [relations]   one polynomial per line: monomials joined by '+', factors by '*', powers by '^'
 *   [options]     graded = true|false
 * '#' starts a comment.
 */
AlgebraPresentation parse_presentation(const std::string& text);
AlgebraPresentation load_presentation(const std::string& path);

}  // namespace cyclo2

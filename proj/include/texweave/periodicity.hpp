#ifndef TEXWEAVE_PERIODICITY_HPP
#define TEXWEAVE_PERIODICITY_HPP

#include <stdexcept>
#include <string>

namespace texweave {

/// Size of one periodic unit of the texture: `rows` is the number of pixel
/// rows per unit (the column periodicity), `cols` the number of pixel
/// columns per unit (the row periodicity). Drives kernel sizing, corner
/// cropping and block tiling.
struct periodicity {
    int rows = 0;
    int cols = 0;

    void validate() const
    {
        if (rows < 2 || cols < 2)
            throw std::invalid_argument("periodicity must be at least 2x2 pixels, got " +
                                        std::to_string(rows) + "x" + std::to_string(cols));
    }
};

} // namespace texweave

#endif

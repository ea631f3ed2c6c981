#include "stk/notes.hpp"

#include <cctype>
#include <fmt/format.h>

namespace stk::notes {

std::string za_break(std::size_t index) {
    return fmt::format("Level break suggested at index {} - consider modelling the break before differencing",
                       index);
}

std::string adf_pp_disagree(std::string_view spec_label) {
    return fmt::format("ADF and PP disagree under the {} specification; ADF decides the diagnosis",
                       spec_label);
}

std::string seasonal_cycle(std::string_view label, int period) {
    return fmt::format("tested {} cycle (period {})", label, period);
}

std::string seasonal_detected(std::string_view label, int period) {
    std::string name(label);
    if (!name.empty()) name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    return fmt::format("{} seasonality detected - consider seasonal differencing at lag {}", name,
                       period);
}

std::string skipped(std::string_view reason) { return fmt::format("Skipped: {}", reason); }

}  // namespace stk::notes

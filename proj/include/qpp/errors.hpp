#ifndef QPP_ERRORS_HPP
#define QPP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qpp
{

class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

#define QPP_DECLARE_ERROR(name)                                                                                        \
    class name : public error                                                                                          \
    {                                                                                                                  \
    public:                                                                                                            \
        using error::error;                                                                                            \
    }

QPP_DECLARE_ERROR(zero_constant_term);
QPP_DECLARE_ERROR(index_out_of_range);
QPP_DECLARE_ERROR(zero_exponent);
QPP_DECLARE_ERROR(bound_exceeded);
QPP_DECLARE_ERROR(divergence_guard);
QPP_DECLARE_ERROR(invalid_specialization);
QPP_DECLARE_ERROR(negative_exponent);
QPP_DECLARE_ERROR(non_integer_exponent);
QPP_DECLARE_ERROR(unknown_tag);

#undef QPP_DECLARE_ERROR

} // namespace qpp

#endif

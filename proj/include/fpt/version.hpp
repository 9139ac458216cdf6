#ifndef FPT_VERSION_HPP
#define FPT_VERSION_HPP

#define FPT_VERSION_STRING "0.1.0"

#endif

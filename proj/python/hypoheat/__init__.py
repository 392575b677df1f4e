"""Python interface to the hypoheat verification engine.

The heavy lifting lives in the compiled extension ``_hypoheat``; this package
re-exports its functions. See the project README for the function registry
and the meaning of the model names.
"""

try:
    from ._hypoheat import (  # type: ignore[attr-defined]
        __version__,
        check,
        check_decay,
        estimate_dptf,
        estimate_ptf,
        function_names,
        heat_apply,
        heat_value,
        model_info,
        normal_form,
        selftest_json,
        tensors,
        verify_bw,
        verify_commutation,
    )
except ImportError:  # running against a build tree
    from _hypoheat import (  # type: ignore[no-redef]
        __version__,
        check,
        check_decay,
        estimate_dptf,
        estimate_ptf,
        function_names,
        heat_apply,
        heat_value,
        model_info,
        normal_form,
        selftest_json,
        tensors,
        verify_bw,
        verify_commutation,
    )

__all__ = [
    "__version__",
    "check",
    "check_decay",
    "estimate_dptf",
    "estimate_ptf",
    "function_names",
    "heat_apply",
    "heat_value",
    "model_info",
    "normal_form",
    "selftest_json",
    "tensors",
    "verify_bw",
    "verify_commutation",
]

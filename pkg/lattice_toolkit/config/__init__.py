from lattice_toolkit.config.toolkit_config import ToolkitConfig, get_config, set_config

__all__ = ["ToolkitConfig", "get_config", "set_config"]

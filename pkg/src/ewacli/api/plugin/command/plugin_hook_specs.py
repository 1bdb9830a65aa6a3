from ewacli.api.plugin.command import plugin_hook_spec


@plugin_hook_spec
def command_spec():
    """Command spec"""
    pass
